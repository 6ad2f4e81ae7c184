#include "latmax/lattice_core.hpp"

#include <algorithm>
#include <queue>

namespace latmax {

Poset::Poset(int elements, std::vector<std::pair<int, int>> relations,
             std::vector<std::string> labels)
    : m_(elements), labels_(std::move(labels)) {
    if (elements < 0 || elements > kMaxElements)
        throw std::invalid_argument("poset size must be in [0, 64], got " +
                                    std::to_string(elements));
    if (!labels_.empty() && static_cast<int>(labels_.size()) != elements)
        throw std::invalid_argument("label count does not match element count");

    std::vector<std::vector<int>> succ(m_);
    std::vector<int> indeg(m_, 0);
    for (auto [lo, hi] : relations) {
        if (lo < 0 || lo >= m_ || hi < 0 || hi >= m_)
            throw std::invalid_argument("relation endpoint out of range");
        if (lo == hi) throw std::invalid_argument("self-loop in relation set");
        succ[lo].push_back(hi);
        ++indeg[hi];
    }

    // Kahn order doubles as the acyclicity check.
    std::vector<int> topo;
    topo.reserve(m_);
    std::vector<int> deg = indeg;
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int e = 0; e < m_; ++e)
        if (deg[e] == 0) ready.push(e);
    while (!ready.empty()) {
        int e = ready.top();
        ready.pop();
        topo.push_back(e);
        for (int f : succ[e])
            if (--deg[f] == 0) ready.push(f);
    }
    if (static_cast<int>(topo.size()) != m_)
        throw std::invalid_argument("relation set contains a cycle");

    below_.assign(m_, 0);
    above_.assign(m_, 0);
    std::vector<std::vector<int>> pred(m_);
    for (int e = 0; e < m_; ++e)
        for (int f : succ[e]) pred[f].push_back(e);
    for (int e : topo) {
        Mask b = bit(e);
        for (int p : pred[e]) b |= below_[p];
        below_[e] = b;
    }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int e = *it;
        Mask a = bit(e);
        for (int f : succ[e]) a |= above_[f];
        above_[e] = a;
    }

    for (int e = 0; e < m_; ++e)
        if (popcount(below_[e]) == 1) minimal_ |= bit(e);

    // Transitive reduction: keep (e, f) only when no intermediate g exists.
    for (int e = 0; e < m_; ++e) {
        Mask over = above_[e] & ~bit(e);
        for (int f : mask_elements(over)) {
            Mask between = (above_[e] & below_[f]) & ~bit(e) & ~bit(f);
            if (between == 0) covers_.emplace_back(e, f);
        }
    }
    std::sort(covers_.begin(), covers_.end());
}

bool Poset::is_down_closed(Mask s) const {
    for (Mask rest = s; rest;) {
        int e = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (below_[e] & ~s) return false;
    }
    return true;
}

Mask Poset::down_closure(Mask s) const {
    Mask out = 0;
    for (int e : mask_elements(s)) out |= below_[e];
    return out;
}

Mask Poset::up_closure(Mask s) const {
    Mask out = 0;
    for (int e : mask_elements(s)) out |= above_[e];
    return out;
}

bool Poset::same_structure(const Poset& other) const {
    return this == &other || (m_ == other.m_ && below_ == other.below_);
}

PosetPtr make_poset(int elements, std::vector<std::pair<int, int>> relations,
                    std::vector<std::string> labels) {
    return std::make_shared<Poset>(elements, std::move(relations), std::move(labels));
}

PosetPtr disjoint_chains_poset(int n, int c) {
    if (n < 0 || c < 0) throw std::invalid_argument("negative chain shape");
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + 1 < c; ++j) covers.emplace_back(i * c + j, i * c + j + 1);
    return make_poset(n * c, std::move(covers));
}

bool disjoint_chains_shape(const Poset& p, ChainShape& out) {
    int m = p.size();
    if (m == 0) {
        out = {0, 0};
        return true;
    }
    // Probe chain length from element 0, then verify the canonical layout.
    int c = popcount(p.above(0) | p.below(0));
    if (c <= 0 || m % c != 0) return false;
    int n = m / c;
    auto canon = disjoint_chains_poset(n, c);
    if (canon->same_structure(p)) {
        out = {n, c};
        return true;
    }
    return false;
}

Ideal::Ideal(PosetPtr poset, Mask mask) : poset_(std::move(poset)), mask_(mask) {
    if (mask_ & ~poset_->ground_set())
        throw std::invalid_argument("ideal mask references elements outside the poset");
    if (!poset_->is_down_closed(mask_))
        throw std::invalid_argument("element set is not downward closed");
}

Ideal Ideal::unchecked(PosetPtr poset, Mask mask) {
    Ideal s;
    s.poset_ = std::move(poset);
    s.mask_ = mask;
    return s;
}

bool is_ideal(const Poset& p, Mask s) {
    if (s & ~p.ground_set())
        throw std::invalid_argument("element set references ids outside the poset");
    return p.is_down_closed(s);
}

std::pair<Ideal, Ideal> meet_join(const Ideal& a, const Ideal& b) {
    if (!a.poset()->same_structure(*b.poset()))
        throw std::invalid_argument("meet/join of ideals over different posets");
    return {Ideal::unchecked(a.poset(), a.mask() & b.mask()),
            Ideal::unchecked(a.poset(), a.mask() | b.mask())};
}

std::uint64_t IntLatticeDomain::point_count_or_throw(std::uint64_t cap) const {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        unsigned __int128 next = static_cast<unsigned __int128>(count) * (C + 1);
        if (next > cap)
            throw enumeration_limit_error("integer lattice domain too large: (C+1)^n exceeds " +
                                          std::to_string(cap));
        count = static_cast<std::uint64_t>(next);
    }
    return count;
}

LatticePoint::LatticePoint(IntLatticeDomain d, std::vector<int> entries)
    : C_(d.C), x_(std::move(entries)) {
    if (d.n != static_cast<int>(x_.size()))
        throw std::invalid_argument("entry count does not match dimension");
    if (d.C < 0) throw std::invalid_argument("negative bound");
    for (int v : x_)
        if (v < 0 || v > C_)
            throw std::invalid_argument("lattice point entry out of [0, C]");
}

LatticePoint LatticePoint::zeros(IntLatticeDomain d) {
    return LatticePoint(d, std::vector<int>(d.n, 0));
}

LatticePoint LatticePoint::constant(IntLatticeDomain d, int value) {
    return LatticePoint(d, std::vector<int>(d.n, value));
}

void LatticePoint::set(int i, int v) {
    if (v < 0 || v > C_) throw std::invalid_argument("entry out of [0, C]");
    x_[i] = v;
}

bool LatticePoint::leq(const LatticePoint& other) const {
    for (int i = 0; i < n(); ++i)
        if (x_[i] > other.x_[i]) return false;
    return true;
}

std::pair<LatticePoint, LatticePoint> meet_join(const LatticePoint& a, const LatticePoint& b) {
    if (a.domain() != b.domain())
        throw std::invalid_argument("meet/join of points over different lattices");
    std::vector<int> lo(a.n()), hi(a.n());
    for (int i = 0; i < a.n(); ++i) {
        lo[i] = std::min(a[i], b[i]);
        hi[i] = std::max(a[i], b[i]);
    }
    return {LatticePoint(a.domain(), std::move(lo)), LatticePoint(a.domain(), std::move(hi))};
}

bool LinearExtension::valid() const {
    if (!poset || static_cast<int>(order.size()) != poset->size()) return false;
    std::vector<int> pos(poset->size(), -1);
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        int e = order[i];
        if (e < 0 || e >= poset->size() || pos[e] != -1) return false;
        pos[e] = i;
    }
    for (auto [lo, hi] : poset->covers())
        if (pos[lo] > pos[hi]) return false;
    return true;
}

namespace {

LinearExtension kahn_extension(PosetPtr p, Rng* rng) {
    int m = p->size();
    std::vector<int> remaining_below(m);
    for (int e = 0; e < m; ++e) remaining_below[e] = popcount(p->strictly_below(e));
    std::vector<int> avail;
    for (int e = 0; e < m; ++e)
        if (remaining_below[e] == 0) avail.push_back(e);
    std::vector<int> order;
    order.reserve(m);
    while (!avail.empty()) {
        std::size_t pick = 0;
        if (rng) {
            pick = static_cast<std::size_t>(rng->below(avail.size()));
        } else {
            pick = static_cast<std::size_t>(
                std::min_element(avail.begin(), avail.end()) - avail.begin());
        }
        int e = avail[pick];
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(pick));
        order.push_back(e);
        for (int f : mask_elements(p->above(e) & ~bit(e)))
            if (--remaining_below[f] == 0) avail.push_back(f);
    }
    return {std::move(p), std::move(order)};
}

}  // namespace

LinearExtension linear_extension(PosetPtr p, TieBreak) { return kahn_extension(std::move(p), nullptr); }

LinearExtension linear_extension_seeded(PosetPtr p, std::uint64_t seed) {
    Rng rng(seed);
    return kahn_extension(std::move(p), &rng);
}

namespace {

std::vector<int> id_topo_order(const Poset& p) {
    int m = p.size();
    std::vector<int> remaining(m);
    for (int e = 0; e < m; ++e) remaining[e] = popcount(p.strictly_below(e));
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int e = 0; e < m; ++e)
        if (remaining[e] == 0) ready.push(e);
    std::vector<int> order;
    order.reserve(m);
    while (!ready.empty()) {
        int e = ready.top();
        ready.pop();
        order.push_back(e);
        for (int f : mask_elements(p.above(e) & ~bit(e)))
            if (--remaining[f] == 0) ready.push(f);
    }
    return order;
}

}  // namespace

std::uint64_t for_each_ideal(const Poset& p, std::uint64_t limit,
                             const std::function<void(Mask)>& fn) {
    // DFS over the fixed linear extension: at position t we may always
    // exclude order[t]; we may include it only when all its strict
    // predecessors are already in. Every ideal is reached exactly once.
    std::vector<int> order = id_topo_order(p);
    int m = p.size();
    std::uint64_t count = 0;
    // Iterative DFS: frame = (position, mask, include-branch-pending).
    struct Frame {
        int pos;
        Mask mask;
        int stage;  // 0: try exclude, 1: try include, 2: done
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.pos == m) {
            if (++count > limit)
                throw enumeration_limit_error("ideal count exceeds limit " + std::to_string(limit));
            if (fn) fn(f.mask);
            stack.pop_back();
            continue;
        }
        int e = order[f.pos];
        if (f.stage == 0) {
            f.stage = 1;
            stack.push_back({f.pos + 1, f.mask, 0});
        } else if (f.stage == 1) {
            f.stage = 2;
            if ((p.strictly_below(e) & ~f.mask) == 0)
                stack.push_back({f.pos + 1, f.mask | bit(e), 0});
        } else {
            stack.pop_back();
        }
    }
    return count;
}

std::vector<Mask> enumerate_ideals(const Poset& p, std::uint64_t limit) {
    std::vector<Mask> out;
    for_each_ideal(p, limit, [&](Mask m) { out.push_back(m); });
    return out;
}

std::uint64_t count_ideals(const Poset& p, std::uint64_t limit) {
    return for_each_ideal(p, limit, nullptr);
}

Ideal lattice_point_to_ideal(const LatticePoint& x, PosetPtr chains) {
    ChainShape shape{};
    if (!disjoint_chains_shape(*chains, shape))
        throw std::invalid_argument("target poset is not in disjoint-chain layout");
    if (shape.n != x.n() || shape.c != x.bound())
        throw std::invalid_argument("lattice point shape does not match chain poset");
    Mask m = 0;
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x[i]; ++j) m |= bit(i * shape.c + j);
    return Ideal::unchecked(std::move(chains), m);
}

LatticePoint ideal_to_lattice_point(const Ideal& s) {
    ChainShape shape{};
    if (!disjoint_chains_shape(*s.poset(), shape))
        throw std::invalid_argument("ideal's poset is not in disjoint-chain layout");
    std::vector<int> x(shape.n, 0);
    for (int i = 0; i < shape.n; ++i) {
        int level = 0;
        while (level < shape.c && s.contains(i * shape.c + level)) ++level;
        x[i] = level;
    }
    return LatticePoint({shape.n, shape.c}, std::move(x));
}

}  // namespace latmax
