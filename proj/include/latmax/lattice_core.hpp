#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "latmax/common.hpp"

namespace latmax {

// Element sets are fixed-width bitmasks; the ground-set size is capped so a
// single word always suffices. The whole artifact is enumeration-heavy and
// mask operations dominate.
using Mask = std::uint64_t;
inline constexpr int kMaxElements = 64;

inline Mask bit(int e) { return Mask{1} << e; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    while (m) {
        int e = __builtin_ctzll(m);
        out.push_back(e);
        m &= m - 1;
    }
    return out;
}

// Finite poset given by an acyclic relation set. The reflexive-transitive
// closure is computed once at construction; covers() exposes the transitive
// reduction, which is also the canonical serialized form.
class Poset {
public:
    Poset(int elements, std::vector<std::pair<int, int>> relations,
          std::vector<std::string> labels = {});

    int size() const { return m_; }
    // below(e): e and everything under it; above(e): e and everything over it.
    Mask below(int e) const { return below_[e]; }
    Mask above(int e) const { return above_[e]; }
    Mask strictly_below(int e) const { return below_[e] & ~bit(e); }
    bool leq(int a, int b) const { return (below_[b] & bit(a)) != 0; }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    Mask minimal_elements() const { return minimal_; }
    Mask ground_set() const { return full_mask(m_); }
    const std::vector<std::string>& labels() const { return labels_; }

    bool is_down_closed(Mask s) const;
    // Down-closure of an arbitrary element set.
    Mask down_closure(Mask s) const;
    Mask up_closure(Mask s) const;

    bool same_structure(const Poset& other) const;

private:
    int m_;
    std::vector<Mask> below_, above_;
    std::vector<std::pair<int, int>> covers_;
    Mask minimal_ = 0;
    std::vector<std::string> labels_;
};

using PosetPtr = std::shared_ptr<const Poset>;

PosetPtr make_poset(int elements, std::vector<std::pair<int, int>> relations,
                    std::vector<std::string> labels = {});

// n disjoint chains of c elements each; chain i occupies ids i*c .. i*c+c-1
// bottom to top. This is the lattice-point correspondence layout.
PosetPtr disjoint_chains_poset(int n, int c);
// Recognizes the canonical layout above; returns {n, c} or nothing.
struct ChainShape { int n; int c; };
bool disjoint_chains_shape(const Poset& p, ChainShape& out);

// Downward-closed element set over a fixed poset; the points of the
// distributive lattice D(P).
class Ideal {
public:
    Ideal(PosetPtr poset, Mask mask);
    static Ideal unchecked(PosetPtr poset, Mask mask);

    Mask mask() const { return mask_; }
    const PosetPtr& poset() const { return poset_; }
    int size() const { return popcount(mask_); }
    bool contains(int e) const { return (mask_ & bit(e)) != 0; }
    std::vector<int> elements() const { return mask_elements(mask_); }

    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.mask_ == b.mask_ && a.poset_->same_structure(*b.poset_);
    }

private:
    Ideal() = default;
    PosetPtr poset_;
    Mask mask_ = 0;
};

bool is_ideal(const Poset& p, Mask s);

// meet = intersection, join = union.
std::pair<Ideal, Ideal> meet_join(const Ideal& a, const Ideal& b);

// Integer vector in [0..C]^n.
struct IntLatticeDomain {
    int n = 0;
    int C = 0;
    friend bool operator==(const IntLatticeDomain&, const IntLatticeDomain&) = default;
    // Number of lattice points, or nullopt on overflow past the cap.
    std::uint64_t point_count_or_throw(std::uint64_t cap) const;
};

class LatticePoint {
public:
    LatticePoint(IntLatticeDomain d, std::vector<int> entries);
    static LatticePoint zeros(IntLatticeDomain d);
    static LatticePoint constant(IntLatticeDomain d, int value);

    int n() const { return static_cast<int>(x_.size()); }
    int bound() const { return C_; }
    IntLatticeDomain domain() const { return {n(), C_}; }
    int operator[](int i) const { return x_[i]; }
    void set(int i, int v);
    const std::vector<int>& entries() const { return x_; }

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.C_ == b.C_ && a.x_ == b.x_;
    }
    // Entrywise order.
    bool leq(const LatticePoint& other) const;

private:
    int C_;
    std::vector<int> x_;
};

std::pair<LatticePoint, LatticePoint> meet_join(const LatticePoint& a, const LatticePoint& b);

// Total order of poset elements consistent with the partial order.
struct LinearExtension {
    PosetPtr poset;
    std::vector<int> order;  // element ids, positions 0..m-1
    bool valid() const;
};

enum class TieBreak { ById };

LinearExtension linear_extension(PosetPtr p, TieBreak = TieBreak::ById);
// Tie-breaks among currently-available minimal elements with a seeded draw.
LinearExtension linear_extension_seeded(PosetPtr p, std::uint64_t seed);

// Streams every ideal of p exactly once (DFS over the id-tie-break linear
// extension, exclude branch first). Throws enumeration_limit_error once the
// count would exceed `limit`. Returns the total count.
std::uint64_t for_each_ideal(const Poset& p, std::uint64_t limit,
                             const std::function<void(Mask)>& fn);
std::vector<Mask> enumerate_ideals(const Poset& p, std::uint64_t limit = default_enum_limit());
std::uint64_t count_ideals(const Poset& p, std::uint64_t limit = default_enum_limit());

// x_i = k marks the lowest k elements of chain i. The inverse requires the
// canonical disjoint-chain layout.
Ideal lattice_point_to_ideal(const LatticePoint& x, PosetPtr chains);
LatticePoint ideal_to_lattice_point(const Ideal& s);

}  // namespace latmax
