#include "core/labelings.hpp"

#include <algorithm>

#include "core/canon.hpp"
#include "core/error.hpp"

namespace shotgun {

namespace {

void validate_structure(const CycleStructure& c) {
  if (c.d < 3)
    throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  if (c.nsources == 0 || c.nsources > c.vertex_count())
    throw Error(ErrorCode::InvalidArgument, "structure needs sources");
  std::vector<std::uint32_t> arrivals(c.vertex_count(), 0);
  std::vector<std::uint32_t> deg(c.vertex_count(), 0);
  for (std::size_t i = 0; i < c.vertex_count(); ++i) {
    bool is_source = i < c.nsources;
    if ((c.depth[i] == 0) != is_source)
      throw Error(ErrorCode::InvalidArgument,
                  "depth zero is reserved for sources");
  }
  for (const StructArc& a : c.arcs) {
    if (a.src >= c.vertex_count() || a.dst >= c.vertex_count())
      throw Error(ErrorCode::InvalidArgument, "arc endpoint out of range");
    std::uint32_t du = c.depth[a.src], dw = c.depth[a.dst];
    if (a.collision) {
      if (dw != du && dw != du + 1)
        throw Error(ErrorCode::InvalidArgument,
                    "collision arc spans more than one depth");
    } else {
      if (dw != du + 1)
        throw Error(ErrorCode::InvalidArgument,
                    "tree arc must descend one depth");
      ++arrivals[a.dst];
    }
    deg[a.src] += a.src == a.dst ? 2 : 1;
    if (a.src != a.dst) ++deg[a.dst];
  }
  for (std::size_t i = 0; i < c.vertex_count(); ++i) {
    if (i < c.nsources) {
      if (arrivals[i] != 0)
        throw Error(ErrorCode::InvalidArgument, "tree arc into a source");
    } else {
      if (arrivals[i] != 1)
        throw Error(ErrorCode::InvalidArgument,
                    "every non-source needs exactly one arrival arc");
      // Degree-1 non-sources would be stripped away by extraction, so no
      // breadth-first run can leave one behind.
      if (deg[i] < 2)
        throw Error(ErrorCode::InvalidArgument,
                    "structure has a removable leaf");
    }
  }
}

struct ReplaySlot {
  std::uint32_t vertex;
  std::uint32_t rank;
};

constexpr std::uint8_t kQueued = 0, kConsumedMark = 1;

struct Replay {
  std::uint32_t d = 0, ns = 0, maxdepth = 0;
  std::size_t arcs_needed = 0;
  std::vector<std::uint32_t> vquota;          // structure vertices per depth
  std::vector<std::uint32_t> rhalf, rint;     // remaining collision quotas
  TypeCode target;
  std::uint64_t budget = 0, visited = 0, found = 0;
  std::vector<Labeling>* out = nullptr;

  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> vused;           // per depth, vertices created
  std::vector<ReplaySlot> fifo;
  std::vector<std::uint8_t> state;
  std::vector<StructArc> arcs;
  std::vector<ArcLabel> labels;

  void add_vertex(std::uint32_t dep) {
    std::uint32_t id = static_cast<std::uint32_t>(depth.size());
    depth.push_back(dep);
    ++vused[dep];
    std::uint32_t ranks = dep == 0 ? d : d - 1;
    for (std::uint32_t r = 1; r <= ranks; ++r) {
      fifo.push_back(ReplaySlot{id, r});
      state.push_back(kQueued);
    }
  }

  void drop_vertex() {
    std::uint32_t dep = depth.back();
    --vused[dep];
    depth.pop_back();
    std::uint32_t ranks = dep == 0 ? d : d - 1;
    fifo.resize(fifo.size() - ranks);
    state.resize(state.size() - ranks);
  }

  void leaf() {
    CycleStructure got;
    got.d = d;
    got.nsources = ns;
    got.depth = depth;
    got.arcs = arcs;
    if (canonical_structure_code(got) != target) return;
    ++found;
    if (out) out->push_back(Labeling{depth, arcs, labels});
  }

  // Quotas frozen by reaching pop depth du: vertex counts at depths <= du
  // and collisions whose popping side lies below du.
  bool frozen_quotas_met(std::uint32_t du) const {
    for (std::uint32_t dep = 0; dep <= du; ++dep)
      if (vused[dep] != vquota[dep]) return false;
    for (std::uint32_t i = 1; i <= du && i < rhalf.size(); ++i)
      if (rhalf[i] != 0 || rint[i] != 0) return false;
    return true;
  }

  void run(std::size_t qpos) {
    if (++visited > budget)
      throw Error(ErrorCode::BudgetExceeded,
                  "labeling replay budget exhausted");
    if (arcs.size() == arcs_needed) {
      leaf();
      return;
    }
    if (qpos == fifo.size()) return;
    if (state[qpos] == kConsumedMark) {
      run(qpos + 1);
      return;
    }

    std::uint32_t v = fifo[qpos].vertex, rank = fifo[qpos].rank;
    std::uint32_t du = depth[v];
    if (!frozen_quotas_met(du)) return;

    // The slot pops plain: a fresh reveal whose subtree stays cycle-free.
    run(qpos + 1);

    // The slot reveals a new structure vertex one level down.
    if (du + 1 <= maxdepth && vused[du + 1] < vquota[du + 1]) {
      std::uint32_t w = static_cast<std::uint32_t>(depth.size());
      arcs.push_back(StructArc{v, w, false});
      labels.push_back(ArcLabel{rank, 0});
      add_vertex(du + 1);
      run(qpos + 1);
      drop_vertex();
      arcs.pop_back();
      labels.pop_back();
    }

    // The slot collides into a slot still waiting in the queue.
    for (std::size_t tpos = qpos + 1; tpos < fifo.size(); ++tpos) {
      if (state[tpos] == kConsumedMark) continue;
      std::uint32_t w = fifo[tpos].vertex, dw = depth[w];
      if (dw != du && dw != du + 1)
        throw std::logic_error("queue holds more than two depth layers");
      std::uint32_t idx = dw == du ? du + 1 : dw;
      std::uint32_t& quota = dw == du ? rhalf[idx] : rint[idx];
      if (quota == 0) continue;
      --quota;
      state[tpos] = kConsumedMark;
      arcs.push_back(StructArc{v, w, true});
      labels.push_back(ArcLabel{rank, fifo[tpos].rank});
      run(qpos + 1);
      labels.pop_back();
      arcs.pop_back();
      state[tpos] = kQueued;
      ++quota;
    }
  }
};

std::uint64_t replay(const CycleStructure& c, std::uint64_t budget,
                     std::vector<Labeling>* out) {
  validate_structure(c);
  Replay rp;
  rp.d = c.d;
  rp.ns = c.nsources;
  rp.maxdepth = c.max_depth();
  rp.arcs_needed = c.arcs.size();
  rp.vquota.assign(rp.maxdepth + 2, 0);
  for (std::uint32_t dep : c.depth) ++rp.vquota[dep];
  rp.rhalf.assign(rp.maxdepth + 2, 0);
  rp.rint.assign(rp.maxdepth + 2, 0);
  for (const StructArc& a : c.arcs) {
    if (!a.collision) continue;
    std::uint32_t du = c.depth[a.src], dw = c.depth[a.dst];
    if (dw == du)
      ++rp.rhalf[du + 1];
    else
      ++rp.rint[dw];
  }
  rp.target = canonical_structure_code(c);
  rp.budget = budget;
  rp.out = out;
  rp.vused.assign(rp.maxdepth + 2, 0);
  for (std::uint32_t i = 0; i < rp.ns; ++i) rp.add_vertex(0);
  rp.run(0);
  return rp.found;
}

}  // namespace

std::vector<Labeling> enumerate_labelings(const CycleStructure& c,
                                          std::uint64_t budget) {
  std::vector<Labeling> out;
  replay(c, budget, &out);
  return out;
}

std::uint64_t count_labelings(const CycleStructure& c, std::uint64_t budget) {
  return replay(c, budget, nullptr);
}

}  // namespace shotgun
