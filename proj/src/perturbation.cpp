#include "beckfiala/perturbation.hpp"

#include <algorithm>
#include <sstream>

namespace bf {

namespace {

// Adds the row for tau(S) [+ clamp * tau(banner)] = chi(S) [+ clamp * chi(banner)]
// with frozen coordinates substituted into rhs.
LinearRow make_row(const AlgorithmState& st, const std::vector<int>& sets, int banner, const Rat& clamp) {
    LinearRow row;
    for (int s : sets) {
        for (int x : st.sys->sets[s]) {
            if (st.chi.frozen(x)) continue;
            row.coeff[x] += 1;
            row.rhs += st.chi.values[x];
        }
    }
    if (banner >= 0 && clamp != 0 && !st.chi.frozen(banner)) {
        row.coeff[banner] += clamp;
        row.rhs += clamp * st.chi.values[banner];
    }
    return row;
}

}  // namespace

LinearSystem build_equations(const AlgorithmState& st) {
    LinearSystem lin;
    for (int x = 0; x < st.sys->n; ++x)
        if (!st.chi.frozen(x)) lin.unknowns.push_back(x);

    for (int s : st.pool_sets()) lin.rows.push_back(make_row(st, {s}, -1, Rat(0)));

    for (const auto& c : st.cohorts) {
        const BigInt& beta = st.profile.beta[c.rank];
        for (int s : c.members) {
            if (c.is_matched(s)) continue;
            long long D = st.defeats.count(s) ? st.defeats.at(s) : 0;
            lin.rows.push_back(make_row(st, {s}, c.banner, Rat(pow2ll(D) * beta)));
        }
        for (const auto& [a, b] : c.matching) {
            long long D = st.defeats.count(a) ? st.defeats.at(a) : 0;
            lin.rows.push_back(make_row(st, {a, b}, c.banner, Rat(pow2ll(D + 1) * beta)));
        }
    }
    return lin;
}

std::optional<std::map<int, Rat>> kernel_direction(const LinearSystem& lin) {
    const size_t ncols = lin.unknowns.size();
    if (ncols == 0) return std::nullopt;
    std::map<int, size_t> col_of;
    for (size_t j = 0; j < ncols; ++j) col_of[lin.unknowns[j]] = j;

    // Dense RREF over the rationals; pivot on the lowest column.
    std::vector<std::vector<Rat>> m;
    m.reserve(lin.rows.size());
    for (const auto& row : lin.rows) {
        std::vector<Rat> r(ncols, Rat(0));
        for (const auto& [x, v] : row.coeff) r[col_of.at(x)] = v;
        m.push_back(std::move(r));
    }

    std::vector<long long> pivot_col;  // per pivot row
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < m.size(); ++col) {
        size_t sel = rank;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[rank]);
        Rat inv = m[rank][col];
        for (size_t j = col; j < ncols; ++j) m[rank][j] /= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = col; j < ncols; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_col.push_back(static_cast<long long>(col));
        ++rank;
    }

    // Lowest-index free column drives the kernel vector.
    long long free_col = -1;
    {
        std::vector<bool> is_pivot(ncols, false);
        for (long long c : pivot_col) is_pivot[c] = true;
        for (size_t j = 0; j < ncols; ++j)
            if (!is_pivot[j]) {
                free_col = static_cast<long long>(j);
                break;
            }
    }
    if (free_col < 0) return std::nullopt;

    std::vector<Rat> v(ncols, Rat(0));
    v[free_col] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
        v[pivot_col[i]] = -m[i][free_col];

    std::map<int, Rat> dir;
    for (size_t j = 0; j < ncols; ++j)
        if (v[j] != 0) dir[lin.unknowns[j]] = v[j];
    return dir;
}

FloatingColoring walk_to_boundary(const FloatingColoring& chi, const std::map<int, Rat>& dir,
                                  int sign_preference) {
    if (dir.empty()) throw std::invalid_argument("walk_to_boundary needs a nonzero direction");
    for (const auto& [x, v] : dir)
        if (v != 0 && chi.frozen(x)) throw std::invalid_argument("direction touches a frozen coordinate");

    auto max_step = [&chi, &dir](int sgn) {
        // largest t >= 0 with chi + t * sgn * v inside [-1,1]^X
        std::optional<Rat> t;
        for (const auto& [x, v] : dir) {
            Rat dv = sgn * v;
            if (dv == 0) continue;
            Rat room = dv > 0 ? (Rat(1) - chi.values[x]) / dv : (Rat(-1) - chi.values[x]) / dv;
            if (!t || room < *t) t = room;
        }
        return t.value_or(Rat(0));
    };

    int sgn = sign_preference >= 0 ? +1 : -1;
    Rat t = max_step(sgn);
    if (t <= 0) {
        sgn = -sgn;
        t = max_step(sgn);
    }
    if (t <= 0) throw std::logic_error("no positive step in either direction");

    FloatingColoring out = chi;
    for (const auto& [x, v] : dir) out.values[x] += t * sgn * v;
    return out;
}

std::string dump_equations(const LinearSystem& lin) {
    std::ostringstream os;
    os << lin.rows.size() << " rows, " << lin.unknowns.size() << " unknowns\n";
    for (size_t i = 0; i < lin.rows.size(); ++i) {
        for (const auto& [x, v] : lin.rows[i].coeff)
            os << i << " " << x << " " << rat_to_string(v) << "\n";
        os << i << " rhs " << rat_to_string(lin.rows[i].rhs) << "\n";
    }
    return os.str();
}

}  // namespace bf
