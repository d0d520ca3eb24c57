#include "dioph/lattice.hpp"

#include <algorithm>
#include <cassert>

#include "dioph/error.hpp"

namespace dioph {

mpz_class dot(const ZVec& a, const ZVec& b) {
    assert(a.size() == b.size());
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

mpq_class dot_qz(const std::vector<mpq_class>& a, const ZVec& b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpq_class dot_qq(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpz_class round_q(const mpq_class& q) {
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * rem > den) quot += 1;
    return quot;
}

struct Gso {
    std::vector<std::vector<mpq_class>> star;  // orthogonalized rows
    std::vector<std::vector<mpq_class>> mu;    // mu[i][j], j < i
    std::vector<mpq_class> norm2;              // |b*_i|^2

    void compute(const ZMat& rows) {
        size_t n = rows.size();
        star.assign(n, {});
        mu.assign(n, std::vector<mpq_class>(n, mpq_class(0)));
        norm2.assign(n, mpq_class(0));
        for (size_t i = 0; i < n; ++i) {
            std::vector<mpq_class> v(rows[i].size());
            for (size_t k = 0; k < v.size(); ++k) v[k] = mpq_class(rows[i][k]);
            for (size_t j = 0; j < i; ++j) {
                mpq_class m = norm2[j] == 0 ? mpq_class(0) : dot_qz(star[j], rows[i]) / norm2[j];
                mu[i][j] = m;
                if (m != 0)
                    for (size_t k = 0; k < v.size(); ++k) v[k] -= m * star[j][k];
            }
            star[i] = std::move(v);
            norm2[i] = dot_qq(star[i], star[i]);
        }
    }
};

} // namespace

void lll_reduce(LatticeBasis& basis, const mpq_class& delta) {
    ZMat& b = basis.rows;
    ZMat& u = basis.payload;
    size_t n = b.size();
    if (n == 0) return;
    if (!u.empty() && u.size() != n)
        throw Error(errc::invalid_spec, "payload row count must match basis");

    Gso gso;
    gso.compute(b);

    auto size_reduce = [&](size_t i, size_t j) {
        mpz_class r = round_q(gso.mu[i][j]);
        if (r == 0) return;
        for (size_t k = 0; k < b[i].size(); ++k) b[i][k] -= r * b[j][k];
        if (!u.empty())
            for (size_t k = 0; k < u[i].size(); ++k) u[i][k] -= r * u[j][k];
        for (size_t k = 0; k < j; ++k) gso.mu[i][k] -= mpq_class(r) * gso.mu[j][k];
        gso.mu[i][j] -= mpq_class(r);
    };

    size_t k = 1;
    size_t guard = 0;
    const size_t guard_max = 200000;
    while (k < n) {
        if (++guard > guard_max)
            throw Error(errc::precision_exhausted, "LLL iteration guard tripped");
        for (size_t j = k; j-- > 0;) size_reduce(k, j);
        mpq_class lhs = gso.norm2[k];
        mpq_class rhs = (delta - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            if (!u.empty()) std::swap(u[k], u[k - 1]);
            gso.compute(b);  // small dimensions: recompute is cheap and simple
            k = (k > 1) ? k - 1 : 1;
        }
    }
}

int rank_of(const ZMat& vectors) {
    if (vectors.empty()) return 0;
    std::vector<std::vector<mpq_class>> m;
    m.reserve(vectors.size());
    for (const auto& v : vectors) {
        std::vector<mpq_class> row(v.size());
        for (size_t i = 0; i < v.size(); ++i) row[i] = mpq_class(v[i]);
        m.push_back(std::move(row));
    }
    size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    size_t rpos = 0;
    for (size_t c = 0; c < cols && rpos < rows; ++c) {
        size_t pivot = rpos;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rpos]);
        for (size_t r = rpos + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            mpq_class f = m[r][c] / m[rpos][c];
            for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rpos][cc];
        }
        ++rank;
        ++rpos;
    }
    return rank;
}

bool in_span(const ZMat& vectors, const ZVec& v) {
    ZMat with = vectors;
    with.push_back(v);
    return rank_of(with) == rank_of(vectors);
}

} // namespace dioph
