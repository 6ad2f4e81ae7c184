#include "latmax/value_oracles.hpp"

#include <algorithm>
#include <map>

namespace latmax {

bool same_domain(const Domain& a, const Domain& b) {
    if (a.index() != b.index()) return false;
    if (is_int_lattice(a)) return int_domain(a) == int_domain(b);
    return dl_poset(a)->same_structure(*dl_poset(b));
}

bool is_int_lattice(const Domain& d) { return std::holds_alternative<IntLatticeDomain>(d); }
bool is_distributive_lattice(const Domain& d) { return std::holds_alternative<DLDomain>(d); }

const IntLatticeDomain& int_domain(const Domain& d) {
    if (!is_int_lattice(d)) throw std::invalid_argument("expected an integer-lattice domain");
    return std::get<IntLatticeDomain>(d);
}

const PosetPtr& dl_poset(const Domain& d) {
    if (!is_distributive_lattice(d))
        throw std::invalid_argument("expected a distributive-lattice domain");
    return std::get<DLDomain>(d).poset;
}

double ValueOracle::eval(const LatticePoint& x) const {
    if (!is_int_lattice(domain_) || int_domain(domain_) != x.domain())
        throw std::invalid_argument("point does not belong to the oracle's domain");
    count();
    return value(x);
}

double ValueOracle::eval(const Ideal& s) const {
    if (!is_distributive_lattice(domain_) || !dl_poset(domain_)->same_structure(*s.poset()))
        throw std::invalid_argument("ideal does not belong to the oracle's domain");
    count();
    return value_mask(s.mask());
}

double ValueOracle::eval_mask(Mask s) const {
    const PosetPtr& p = dl_poset(domain_);
    if (s & ~p->ground_set())
        throw std::invalid_argument("mask references elements outside the oracle's poset");
    count();
    return value_mask(s);
}

std::optional<Rat> ValueOracle::rational(const LatticePoint& x) const {
    if (!is_int_lattice(domain_) || int_domain(domain_) != x.domain())
        throw std::invalid_argument("point does not belong to the oracle's domain");
    count();
    return rational_value(x);
}

std::optional<Rat> ValueOracle::rational_mask(Mask s) const {
    if (!is_distributive_lattice(domain_))
        throw std::invalid_argument("expected a distributive-lattice domain");
    count();
    return rational_value_mask(s);
}

double ValueOracle::value(const LatticePoint&) const {
    throw std::logic_error("oracle does not evaluate lattice points");
}

double ValueOracle::value_mask(Mask) const {
    throw std::logic_error("oracle does not evaluate ideals");
}

namespace {

class Fig3Oracle final : public ValueOracle {
public:
    explicit Fig3Oracle(Rat eps) : ValueOracle(IntLatticeDomain{3, 2}), eps_(eps) {
        if (!(Rat(0, 1) < eps)) throw std::invalid_argument("fig3 requires eps > 0");
    }

private:
    bool special(const LatticePoint& a) const {
        int c0 = 0, c2 = 0;
        for (int i = 0; i < 3; ++i) {
            c0 += a[i] == 0;
            c2 += a[i] == 2;
        }
        // Entry multisets {2,0,2} and {2,0,0} in any order.
        if ((c2 == 2 && c0 == 1) || (c2 == 1 && c0 == 2)) return true;
        const auto& x = a.entries();
        return (x == std::vector<int>{2, 0, 1}) || (x == std::vector<int>{0, 2, 1});
    }
    Rat exact(const LatticePoint& a) const {
        if (special(a)) return Rat(1, 1) + eps_;
        int pos = 0, below = 0;
        for (int i = 0; i < 3; ++i) {
            pos += a[i] > 0;
            below += a[i] < 2;
        }
        return Rat::integer(std::min(pos, below));
    }
    double value(const LatticePoint& a) const override { return exact(a).to_double(); }
    std::optional<Rat> rational_value(const LatticePoint& a) const override { return exact(a); }

    Rat eps_;
};

class Fig4Oracle final : public ValueOracle {
public:
    explicit Fig4Oracle(Rat x) : ValueOracle(IntLatticeDomain{2, 2}), x_(x) {
        if (x < Rat(1, 1)) throw std::invalid_argument("fig4 requires x >= 1");
    }

private:
    Rat exact(const LatticePoint& a) const {
        static constexpr int table[3][3] = {
            // [x1][x2], -1 marks the parametric cell (0,2)
            {1, 1, -1},
            {2, 1, 1},
            {3, 2, 2},
        };
        int v = table[a[0]][a[1]];
        return v < 0 ? x_ : Rat::integer(v);
    }
    double value(const LatticePoint& a) const override { return exact(a).to_double(); }
    std::optional<Rat> rational_value(const LatticePoint& a) const override { return exact(a); }

    Rat x_;
};

class Lemma4Oracle final : public ValueOracle {
public:
    Lemma4Oracle(int C, Rat eps) : ValueOracle(IntLatticeDomain{2, C}), eps_(eps) {
        if (C < 1) throw std::invalid_argument("lemma4 requires C >= 1");
        if (!(Rat(0, 1) < eps) || !(eps < Rat(1, 1)))
            throw std::invalid_argument("lemma4 requires 0 < eps < 1");
    }

private:
    Rat exact(const LatticePoint& a) const {
        int C = a.bound();
        if ((a[0] == 0 && a[1] == 0) || (a[0] == C && a[1] == C)) return Rat::integer(0);
        if (a[0] == C && a[1] == 0) return Rat::integer(1);
        return eps_;
    }
    double value(const LatticePoint& a) const override { return exact(a).to_double(); }
    std::optional<Rat> rational_value(const LatticePoint& a) const override { return exact(a); }

    Rat eps_;
};

class CardinalityOracle final : public ValueOracle {
public:
    explicit CardinalityOracle(Domain d) : ValueOracle(std::move(d)) {}

private:
    double value(const LatticePoint& x) const override {
        long long s = 0;
        for (int i = 0; i < x.n(); ++i) s += x[i];
        return static_cast<double>(s);
    }
    double value_mask(Mask s) const override { return popcount(s); }
    std::optional<Rat> rational_value(const LatticePoint& x) const override {
        long long s = 0;
        for (int i = 0; i < x.n(); ++i) s += x[i];
        return Rat::integer(s);
    }
    std::optional<Rat> rational_value_mask(Mask s) const override {
        return Rat::integer(popcount(s));
    }
};

std::uint64_t mixed_radix_index(const LatticePoint& x) {
    std::uint64_t idx = 0;
    std::uint64_t radix = 1;
    for (int i = 0; i < x.n(); ++i) {
        idx += radix * static_cast<std::uint64_t>(x[i]);
        radix *= static_cast<std::uint64_t>(x.bound() + 1);
    }
    return idx;
}

class IntTableOracle final : public ValueOracle {
public:
    IntTableOracle(IntLatticeDomain d, std::vector<double> values)
        : ValueOracle(d), values_(std::move(values)) {
        std::uint64_t expect = d.point_count_or_throw(default_enum_limit());
        if (values_.size() != expect)
            throw std::invalid_argument("table size does not cover the full domain");
        for (double v : values_)
            if (v < 0) throw std::invalid_argument("oracle values must be nonnegative");
    }

private:
    double value(const LatticePoint& x) const override { return values_[mixed_radix_index(x)]; }

    std::vector<double> values_;
};

class DlTableOracle final : public ValueOracle {
public:
    DlTableOracle(PosetPtr poset, std::vector<std::pair<Mask, double>> entries)
        : ValueOracle(DLDomain{poset}) {
        for (auto& [mask, v] : entries) {
            if (!is_ideal(*poset, mask))
                throw std::invalid_argument("table key is not an ideal of the poset");
            if (v < 0) throw std::invalid_argument("oracle values must be nonnegative");
            values_[mask] = v;
        }
        std::uint64_t ideals = count_ideals(*poset);
        if (values_.size() != ideals)
            throw std::invalid_argument("table does not cover all " + std::to_string(ideals) +
                                        " ideals");
    }

private:
    double value_mask(Mask s) const override {
        auto it = values_.find(s);
        if (it == values_.end()) throw std::invalid_argument("mask is not an ideal of the poset");
        return it->second;
    }

    std::map<Mask, double> values_;
};

// Values are built on a 1/8 integer grid: sums and shifts stay exact in
// doubles and expose an exact rational view.
constexpr int kGridDen = 8;

class RandomSubmodularOracle final : public ValueOracle {
public:
    RandomSubmodularOracle(int n, int C, std::uint64_t seed)
        : ValueOracle(IntLatticeDomain{n, C}), n_(n), C_(C) {
        if (n < 1 || C < 0) throw std::invalid_argument("bad random-submodular shape");
        Rng rng(seed);
        unary_.assign(n, std::vector<long long>(C + 1, 0));
        for (auto& h : unary_)
            for (auto& v : h) v = rng.range(0, 32);

        // Pairwise tables: free margins, then integrate nonpositive
        // cross-differences so every local square is submodular.
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                std::vector<std::vector<long long>> g(C + 1, std::vector<long long>(C + 1, 0));
                for (int a = 0; a <= C; ++a) g[a][0] = rng.range(-16, 16);
                for (int b = 1; b <= C; ++b) g[0][b] = g[0][0] + rng.range(-16, 16);
                for (int a = 1; a <= C; ++a)
                    for (int b = 1; b <= C; ++b) {
                        long long cross = -rng.range(0, 6);
                        g[a][b] = g[a][b - 1] + g[a - 1][b] - g[a - 1][b - 1] + cross;
                    }
                long long lo = 0;
                for (auto& row : g) lo = std::min(lo, *std::min_element(row.begin(), row.end()));
                shift_ -= lo;  // per-table lower bound keeps the sum nonnegative
                pair_tables_.push_back({i, j, std::move(g)});
            }
    }

private:
    struct PairTable {
        int i, j;
        std::vector<std::vector<long long>> g;
    };

    long long grid_value(const LatticePoint& x) const {
        long long s = shift_;
        for (int i = 0; i < n_; ++i) s += unary_[i][x[i]];
        for (const auto& t : pair_tables_) s += t.g[x[t.i]][x[t.j]];
        return s;
    }
    double value(const LatticePoint& x) const override {
        return static_cast<double>(grid_value(x)) / kGridDen;
    }
    std::optional<Rat> rational_value(const LatticePoint& x) const override {
        return Rat(grid_value(x), kGridDen);
    }

    int n_, C_;
    std::vector<std::vector<long long>> unary_;
    std::vector<PairTable> pair_tables_;
    long long shift_ = 0;
};

class RandomDrDlOracle final : public ValueOracle {
public:
    RandomDrDlOracle(PosetPtr poset, std::uint64_t seed, bool monotone)
        : ValueOracle(DLDomain{poset}), poset_(std::move(poset)) {
        Rng rng(seed);
        int m = poset_->size();

        // Element weights non-increasing along the order: aggregate raw draws
        // over each element's up-set.
        std::vector<long long> raw(m);
        for (auto& u : raw) u = rng.range(0, 8);
        weights_.assign(m, 0);
        for (int e = 0; e < m; ++e)
            for (int f : mask_elements(poset_->above(e))) weights_[e] += raw[f];

        // Concave nondecreasing term in |S|: sorted nonnegative steps.
        std::vector<long long> steps(m);
        for (auto& s : steps) s = rng.range(0, 12);
        std::sort(steps.rbegin(), steps.rend());
        concave_prefix_.assign(m + 1, 0);
        for (int t = 0; t < m; ++t) concave_prefix_[t + 1] = concave_prefix_[t] + steps[t];

        coverage_scale_ = rng.range(0, 3);

        if (!monotone) {
            // Signed modular term, still non-increasing along the order:
            // aggregate up-set draws minus one common offset.
            std::vector<long long> raw2(m);
            for (auto& u : raw2) u = rng.range(0, 10);
            long long offset = rng.range(6, 14);
            signed_.assign(m, 0);
            for (int e = 0; e < m; ++e) {
                for (int f : mask_elements(poset_->above(e))) signed_[e] += raw2[f];
                signed_[e] -= offset;
            }
            for (long long v : signed_)
                if (v < 0) shift_ -= v;
        }
    }

private:
    long long grid_value(Mask s) const {
        long long v = shift_;
        for (int e : mask_elements(s)) v += weights_[e];
        v += concave_prefix_[popcount(s)];
        if (coverage_scale_) v += coverage_scale_ * popcount(poset_->up_closure(s));
        if (!signed_.empty())
            for (int e : mask_elements(s)) v += signed_[e];
        return v;
    }
    double value_mask(Mask s) const override {
        return static_cast<double>(grid_value(s)) / kGridDen;
    }
    std::optional<Rat> rational_value_mask(Mask s) const override {
        return Rat(grid_value(s), kGridDen);
    }

    PosetPtr poset_;
    std::vector<long long> weights_;
    std::vector<long long> concave_prefix_;
    std::vector<long long> signed_;
    long long coverage_scale_ = 0;
    long long shift_ = 0;
};

class ChainViewOracle final : public ValueOracle {
public:
    explicit ChainViewOracle(OraclePtr inner, PosetPtr chains)
        : ValueOracle(DLDomain{chains}), inner_(std::move(inner)), chains_(std::move(chains)) {}

private:
    double value_mask(Mask s) const override {
        return inner_->eval(ideal_to_lattice_point(Ideal::unchecked(chains_, s)));
    }
    std::optional<Rat> rational_value_mask(Mask s) const override {
        return inner_->rational(ideal_to_lattice_point(Ideal::unchecked(chains_, s)));
    }

    OraclePtr inner_;
    PosetPtr chains_;
};

Rat rat_from_double(double v, const char* what) {
    // Accept simple decimal parameters exactly; reject anything that does
    // not land on a small grid.
    for (long long den : {1LL, 2LL, 4LL, 5LL, 8LL, 10LL, 16LL, 20LL, 50LL, 100LL, 1000LL}) {
        double scaled = v * static_cast<double>(den);
        double rounded = std::round(scaled);
        if (std::fabs(scaled - rounded) < 1e-12 && std::fabs(rounded) < 9e15)
            return Rat(static_cast<long long>(rounded), den);
    }
    throw std::invalid_argument(std::string(what) +
                                " must be a simple decimal for the exact-value families");
}

}  // namespace

OraclePtr make_fig3(Rat eps) { return std::make_shared<Fig3Oracle>(eps); }
OraclePtr make_fig3(double eps) { return make_fig3(rat_from_double(eps, "fig3 epsilon")); }

OraclePtr make_fig4(Rat x) { return std::make_shared<Fig4Oracle>(x); }
OraclePtr make_fig4(double x) { return make_fig4(rat_from_double(x, "fig4 x")); }

OraclePtr make_lemma4(int C, Rat eps) { return std::make_shared<Lemma4Oracle>(C, eps); }
OraclePtr make_lemma4(int C, double eps) {
    return make_lemma4(C, rat_from_double(eps, "lemma4 epsilon"));
}

OraclePtr make_cardinality(Domain d) { return std::make_shared<CardinalityOracle>(std::move(d)); }

OraclePtr make_int_table(IntLatticeDomain d, std::vector<double> values) {
    return std::make_shared<IntTableOracle>(d, std::move(values));
}

OraclePtr make_dl_table(PosetPtr poset, std::vector<std::pair<Mask, double>> entries) {
    return std::make_shared<DlTableOracle>(std::move(poset), std::move(entries));
}

OraclePtr make_random_submodular(int n, int C, std::uint64_t seed) {
    return std::make_shared<RandomSubmodularOracle>(n, C, seed);
}

OraclePtr make_random_dr_monotone_dl(PosetPtr poset, std::uint64_t seed) {
    return std::make_shared<RandomDrDlOracle>(std::move(poset), seed, true);
}

OraclePtr make_random_dr_dl(PosetPtr poset, std::uint64_t seed, bool monotone) {
    return std::make_shared<RandomDrDlOracle>(std::move(poset), seed, monotone);
}

OraclePtr as_distributive_lattice(OraclePtr inner) {
    const IntLatticeDomain& d = int_domain(inner->domain());
    PosetPtr chains = disjoint_chains_poset(d.n, d.C);
    return std::make_shared<ChainViewOracle>(std::move(inner), std::move(chains));
}

}  // namespace latmax
