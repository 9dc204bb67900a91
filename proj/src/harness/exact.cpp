#include "conenet/harness/exact.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace conenet {

using Rat = boost::multiprecision::cpp_rational;

std::vector<SubsetMask> range_masks(const HittingInstance& inst) {
    std::vector<SubsetMask> masks(inst.ranges.size());
    for (std::size_t r = 0; r < inst.ranges.size(); ++r)
        for (std::size_t p = 0; p < inst.points.size(); ++p)
            if (inst.family.contains(inst.ranges[r], inst.points[p], true)) masks[r].set(int(p));
    return masks;
}

namespace {

// For hitting mode, element e covers constraint c when point e is in range c.
// For cover mode, element e covers constraint c when range e contains point c.
std::vector<SubsetMask> coverage_by_element(const HittingInstance& inst, Mode mode) {
    const auto rm = range_masks(inst);
    if (mode == Mode::Cover) return rm; // range e covers the points in its mask
    std::vector<SubsetMask> cov(inst.points.size());
    for (std::size_t r = 0; r < rm.size(); ++r)
        for (std::size_t p = 0; p < inst.points.size(); ++p)
            if (rm[r].test(int(p))) cov[p].set(int(r));
    return cov;
}

int constraint_count(const HittingInstance& inst, Mode mode) {
    return mode == Mode::Hitting ? int(inst.ranges.size()) : int(inst.points.size());
}

} // namespace

std::vector<int> exact_opt(const HittingInstance& inst, Mode mode, int cap) {
    const auto cov = coverage_by_element(inst, mode);
    const int ne = int(cov.size());
    const int nc = constraint_count(inst, mode);
    const SubsetMask want = SubsetMask::all(nc);

    std::vector<int> idx;
    std::vector<int> best;
    auto rec = [&](auto&& self, int start, SubsetMask got, int remaining) -> bool {
        if ((got & want) == want) {
            best = idx;
            return true;
        }
        if (remaining == 0) return false;
        for (int e = start; e < ne; ++e) {
            idx.push_back(e);
            if (self(self, e + 1, got | cov[e], remaining - 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    for (int k = 0; k <= cap; ++k) {
        idx.clear();
        if (rec(rec, 0, {}, k)) return best;
    }
    throw CapExceeded("no solution within the exhaustive-search cardinality cap");
}

std::vector<int> greedy_baseline(const HittingInstance& inst, Mode mode) {
    const auto cov = coverage_by_element(inst, mode);
    const int nc = constraint_count(inst, mode);
    SubsetMask covered;
    const SubsetMask want = SubsetMask::all(nc);
    std::vector<int> chosen;
    while (!((covered & want) == want)) {
        int best = -1, best_gain = -1;
        for (int e = 0; e < int(cov.size()); ++e) {
            const int gain = (cov[e] & ~covered & want).count();
            if (gain > best_gain) { best_gain = gain; best = e; }
        }
        if (best < 0 || best_gain == 0) {
            if (mode == Mode::Hitting) throw UnhittableRange("greedy found an unhittable range");
            throw UncoverablePoint("greedy found an uncoverable point");
        }
        chosen.push_back(best);
        covered |= cov[best];
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

namespace {

// Dense two-phase primal simplex with Bland's rule, exact rationals.
// maximize c.x subject to A x <= b, x >= 0 (b may be negative).
struct SimplexLP {
    int n = 0; // structural variables
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<Rat> c;

    // Returns the optimal structural solution; the problem must be feasible
    // and bounded (callers guarantee both).
    std::vector<Rat> solve() {
        const int m = int(A.size());
        // columns: structural n, slacks m, artificials (added as needed)
        int cols = n + m;
        std::vector<std::vector<Rat>> T(m, std::vector<Rat>(cols, Rat(0)));
        std::vector<Rat> rhs = b;
        std::vector<int> basis(m);
        std::vector<int> artificial_cols;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
            T[i][n + i] = Rat(1);
            basis[i] = n + i;
            if (rhs[i] < 0) {
                for (auto& v : T[i]) v = -v;
                rhs[i] = -rhs[i];
                for (auto& row : T) row.push_back(Rat(0));
                T[i][cols] = Rat(1);
                basis[i] = cols;
                artificial_cols.push_back(cols);
                ++cols;
            }
        }

        auto pivot = [&](int pr, int pc) {
            const Rat piv = T[pr][pc];
            for (auto& v : T[pr]) v /= piv;
            rhs[pr] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == pr) continue;
                const Rat f = T[i][pc];
                if (f == 0) continue;
                for (int j = 0; j < cols; ++j) T[i][j] -= f * T[pr][j];
                rhs[i] -= f * rhs[pr];
            }
            basis[pr] = pc;
        };

        auto run = [&](const std::vector<Rat>& obj, int scan_cols) {
            for (;;) {
                // reduced costs: z_j - obj_j with z from basis
                int enter = -1;
                for (int j = 0; j < scan_cols && enter < 0; ++j) {
                    Rat red = obj[j];
                    for (int i = 0; i < m; ++i) red -= obj[basis[i]] * T[i][j];
                    if (red > 0) enter = j; // Bland: first improving column
                }
                if (enter < 0) return;
                int leave = -1;
                Rat best_ratio;
                for (int i = 0; i < m; ++i) {
                    if (T[i][enter] <= 0) continue;
                    const Rat ratio = rhs[i] / T[i][enter];
                    if (leave < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis[i] < basis[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
                if (leave < 0) throw InvariantError("unbounded LP in the exact oracle");
                pivot(leave, enter);
            }
        };

        if (!artificial_cols.empty()) {
            std::vector<Rat> phase1(cols, Rat(0));
            for (int col : artificial_cols) phase1[col] = Rat(-1);
            run(phase1, cols);
            for (int i = 0; i < m; ++i) {
                bool is_art = std::find(artificial_cols.begin(), artificial_cols.end(), basis[i]) !=
                              artificial_cols.end();
                if (is_art && rhs[i] != 0) throw InvariantError("infeasible LP in the exact oracle");
                if (is_art) {
                    // pivot the artificial out on any eligible column
                    for (int j = 0; j < n + m; ++j)
                        if (T[i][j] != 0) { pivot(i, j); break; }
                }
            }
        }
        std::vector<Rat> obj(cols, Rat(0));
        for (int j = 0; j < n; ++j) obj[j] = c[j];
        run(obj, n + m); // artificial columns never re-enter

        std::vector<Rat> x(n, Rat(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = rhs[i];
        return x;
    }
};

} // namespace

ExactLpResult exact_lp_weights(int n, std::span<const SubsetMask> ranges) {
    if (n <= 0) throw EmptyInput("LP oracle needs points");
    // variables: w_0..w_{n-1}, eps
    SimplexLP lp;
    lp.n = n + 1;
    lp.c.assign(n + 1, Rat(0));
    lp.c[n] = Rat(1);
    // eps - w(T) <= 0 per range
    for (const auto& rm : ranges) {
        std::vector<Rat> row(n + 1, Rat(0));
        for (int p = 0; p < n; ++p)
            if (rm.test(p)) row[p] = Rat(-1);
        row[n] = Rat(1);
        lp.A.push_back(std::move(row));
        lp.b.push_back(Rat(0));
    }
    // sum w = 1 as two inequalities
    std::vector<Rat> row1(n + 1, Rat(1));
    row1[n] = Rat(0);
    lp.A.push_back(row1);
    lp.b.push_back(Rat(1));
    for (auto& v : row1) v = -v;
    lp.A.push_back(row1);
    lp.b.push_back(Rat(-1));

    const auto x = lp.solve();
    ExactLpResult res;
    res.epsilon = x[n].convert_to<double>();
    for (int p = 0; p < n; ++p) res.weights.push_back(x[p].convert_to<double>());
    return res;
}

} // namespace conenet
