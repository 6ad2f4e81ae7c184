#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "latmax/common.hpp"
#include "latmax/lattice_core.hpp"

namespace latmax {

struct DLDomain {
    PosetPtr poset;
};

using Domain = std::variant<IntLatticeDomain, DLDomain>;

bool same_domain(const Domain& a, const Domain& b);
bool is_int_lattice(const Domain& d);
bool is_distributive_lattice(const Domain& d);
const IntLatticeDomain& int_domain(const Domain& d);
const PosetPtr& dl_poset(const Domain& d);

// Black-box nonnegative function over one domain. Every evaluation bumps the
// query counter by exactly one; complexity accounting in the solvers is
// measured in these queries. Deterministic: same input, same output.
class ValueOracle {
public:
    explicit ValueOracle(Domain d) : domain_(std::move(d)) {}
    virtual ~ValueOracle() = default;
    ValueOracle(const ValueOracle&) = delete;
    ValueOracle& operator=(const ValueOracle&) = delete;

    const Domain& domain() const { return domain_; }

    double eval(const LatticePoint& x) const;
    double eval(const Ideal& s) const;
    // Fast path for distributive-lattice domains; the mask must be an ideal.
    double eval_mask(Mask s) const;

    // Exact value when the family supports the rational mode.
    std::optional<Rat> rational(const LatticePoint& x) const;
    std::optional<Rat> rational_mask(Mask s) const;

    std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
    void reset_queries() const { queries_.store(0, std::memory_order_relaxed); }

protected:
    virtual double value(const LatticePoint& x) const;
    virtual double value_mask(Mask s) const;
    virtual std::optional<Rat> rational_value(const LatticePoint&) const { return std::nullopt; }
    virtual std::optional<Rat> rational_value_mask(Mask) const { return std::nullopt; }

private:
    void count() const { queries_.fetch_add(1, std::memory_order_relaxed); }
    Domain domain_;
    mutable std::atomic<std::uint64_t> queries_{0};
};

using OraclePtr = std::shared_ptr<const ValueOracle>;

// --- Built-in instance families ------------------------------------------

// 27-point tight instance on {0,1,2}^3 (family tag "fig3"): base value
// min(#positive entries, #entries below 2), overridden to 1+eps on the
// {2,0,2} / {2,0,0} entry multisets and on (2,0,1), (0,2,1). Optimum is
// (1,1,1) with value 3; the deterministic double greedy ends at 1+eps.
OraclePtr make_fig3(Rat eps);
OraclePtr make_fig3(double eps);

// 9-point instance on {0,1,2}^2 (family tag "fig4"): submodular for every
// x >= 1 but not DR; the step from (0,1) to (0,2) jumps to x.
OraclePtr make_fig4(Rat x);
OraclePtr make_fig4(double x);

// Two-coordinate failure instance on [C]^2 (family tag "lemma4"):
// 0 at (0,0) and (C,C), 1 at (C,0), eps elsewhere.
OraclePtr make_lemma4(int C, Rat eps);
OraclePtr make_lemma4(int C, double eps);

// f(S) = |S| on ideals, f(x) = sum of entries on lattice points.
OraclePtr make_cardinality(Domain d);

// Explicit tables. Integer-lattice values are in mixed-radix order with x_1
// least significant; ideal tables must cover every ideal of the poset.
OraclePtr make_int_table(IntLatticeDomain d, std::vector<double> values);
OraclePtr make_dl_table(PosetPtr poset, std::vector<std::pair<Mask, double>> entries);

// Seeded submodular (not necessarily DR) function on [C]^n: a sum of unary
// tables and pairwise tables with nonpositive cross-differences, shifted to
// be nonnegative. Values land on a 1/8 grid so doubles are exact.
OraclePtr make_random_submodular(int n, int C, std::uint64_t seed);

// Seeded DR-submodular function on D(P): order-consistent element weights
// plus a concave term in |S| plus an up-closure coverage term. Monotone by
// construction; with monotone=false an order-consistent signed modular term
// is added and the whole function shifted back to nonnegative.
OraclePtr make_random_dr_monotone_dl(PosetPtr poset, std::uint64_t seed);
OraclePtr make_random_dr_dl(PosetPtr poset, std::uint64_t seed, bool monotone);

// Views an integer-lattice oracle as a DL oracle over the disjoint-chain
// poset; evaluations are forwarded through the point correspondence.
OraclePtr as_distributive_lattice(OraclePtr inner);

}  // namespace latmax
