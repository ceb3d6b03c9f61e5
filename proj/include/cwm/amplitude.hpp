#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "cwm/bubble.hpp"
#include "cwm/colored_graph.hpp"
#include "cwm/emap.hpp"
#include "cwm/errors.hpp"
#include "cwm/laurent.hpp"
#include "cwm/pairing.hpp"

namespace cwm {

// ---- tensor side -----------------------------------------------------------

inline Rational factorial(int n) {
    Rational r(1);
    for (int k = 2; k <= n; ++k) r *= Rational(k);
    return r;
}

// Coefficient of lambda^p in the tensor partition function: the Gaussian
// propagator carries N^{-(D-1)}, each of the p interaction factors N^s, and a
// gluing mu contributes N^F. All (pV)! Wick pairings enter, disconnected ones
// included; weight (-1)^p / p!.
inline LaurentPoly tensor_coefficient(const Bubble& b, int s, int p) {
    validate_bubble(b);
    if (p < 0) throw PreconditionError("order must be >= 0");
    if (p == 0) return LaurentPoly::one();
    if (p * b.V > 8) throw CapExceededError("tensor expansion capped at p*V <= 8");

    int n = p * b.V;
    LaurentPoly sum;
    ColoredGraph g{b, p, perm_identity(n)};
    do {
        sum.add(Rational(1), graph_face_count(g));
    } while (std::next_permutation(g.mu.begin(), g.mu.end()));

    Rational w = Rational((p % 2) ? -1 : 1) / factorial(p);
    sum.scale(w);
    sum.shift(s * p - (b.D - 1) * n);
    return sum;
}

// ---- matrix side -----------------------------------------------------------

// Index-contraction data of the matrix potential V°(B, Omega): per pair a, the
// color set I_a and, for q in I_a, the pair nu_q(a) whose sigma-column receives
// pair a's row index of color q.
struct MatrixPotentialSpec {
    int D = 0;
    int V = 0;
    std::vector<ColorSet> sets;
    std::vector<Perm> nu;
};

inline MatrixPotentialSpec matrix_potential(const Bubble& b, const Pairing& om) {
    validate_bubble(b);
    validate_pairing(b, om);
    MatrixPotentialSpec spec;
    spec.D = b.D;
    spec.V = b.V;
    spec.nu = pair_frame(b, om);
    spec.sets = attachment_color_sets(spec.nu);
    return spec;
}

// Coefficient of lambda^p of the multi-matrix model: expand exp of the
// black-vertex potential into trace words, Wick-pair the p*V sigma factors of
// [V°]^p against the word letters with the unit propagator, and count index
// loops. Every 1/k and 1/m! enters as an exact rational; nothing is collapsed
// in advance.
inline LaurentPoly matrix_coefficient(const MatrixPotentialSpec& spec, int s, int p) {
    if (p < 0) throw PreconditionError("order must be >= 0");
    if (p == 0) return LaurentPoly::one();
    int n = p * spec.V;
    if (n > 6) throw CapExceededError("matrix expansion capped at p*V <= 6");
    int D = spec.D;

    // stubs: the sigma factors of [V°]^p, stub (copy k, pair a) = k*V + a
    // index slots: per stub, ROW and COL of each color in its set
    auto slot_id = [&](int stub, int rowcol, int color1) {
        return (stub * 2 + rowcol) * D + (color1 - 1);
    };
    int nslots = 2 * n * D;

    std::vector<int> parent(nslots);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int bb) {
        a = find(a);
        bb = find(bb);
        if (a != bb) parent[a] = bb;
    };

    LaurentPoly total;

    // compositions of n into ordered parts = the word lengths (k_1 .. k_m)
    std::vector<int> parts;
    std::vector<int> perm_stub = perm_identity(n);
    std::function<void()> eval_words = [&]() {
        // weight: prod 1/k_j over words, 1/m! over the word tuple
        Rational weight(1);
        for (int k : parts) weight /= Rational(k);
        weight /= factorial((int)parts.size());

        // Wick assignments: stub -> position, positions in reading order.
        // Letters are induced by the stubs, so we enumerate permutations and
        // count index loops for each.
        std::sort(perm_stub.begin(), perm_stub.end());
        do {
            // position t holds stub perm_stub[t]
            // identifications, then loop count
            std::iota(parent.begin(), parent.end(), 0);
            // V° internal: row q of (k,a) meets col q of (k, nu_q(a))
            for (int k = 0; k < p; ++k)
                for (int a = 0; a < spec.V; ++a)
                    for (int q = 1; q <= D; ++q)
                        if (has_color(spec.sets[a], q))
                            unite(slot_id(k * spec.V + a, 0, q),
                                  slot_id(k * spec.V + spec.nu[q - 1][a], 1, q));
            int free_loops = 0;
            int pos0 = 0;
            for (int k : parts) {
                // one trace word occupying positions [pos0, pos0+k)
                for (int q = 1; q <= D; ++q) {
                    std::vector<int> carriers;
                    for (int t = pos0; t < pos0 + k; ++t)
                        if (has_color(spec.sets[perm_stub[t] % spec.V], q)) carriers.push_back(t);
                    if (carriers.empty()) {
                        ++free_loops;
                        continue;
                    }
                    for (size_t j = 0; j < carriers.size(); ++j) {
                        int t = carriers[j], t2 = carriers[(j + 1) % carriers.size()];
                        unite(slot_id(perm_stub[t], 1, q), slot_id(perm_stub[t2], 0, q));
                    }
                }
                pos0 += k;
            }
            int loops = free_loops;
            {
                std::vector<char> seen(nslots, 0);
                for (int k = 0; k < p; ++k)
                    for (int a = 0; a < spec.V; ++a)
                        for (int q = 1; q <= D; ++q)
                            if (has_color(spec.sets[a], q))
                                for (int rc = 0; rc < 2; ++rc) {
                                    int r = find(slot_id(k * spec.V + a, rc, q));
                                    if (!seen[r]) {
                                        seen[r] = 1;
                                        ++loops;
                                    }
                                }
            }
            total.add(weight, loops);
        } while (std::next_permutation(perm_stub.begin(), perm_stub.end()));
    };

    std::function<void(int)> compose = [&](int left) {
        if (left == 0) {
            eval_words();
            return;
        }
        for (int k = 1; k <= left; ++k) {
            parts.push_back(k);
            compose(left - k);
            parts.pop_back();
        }
    };
    compose(n);

    Rational w = Rational((p % 2) ? -1 : 1) / factorial(p);
    total.scale(w);
    total.shift(s * p - (D - 1) * n);
    return total;
}

inline LaurentPoly matrix_coefficient(const Bubble& b, const Pairing& om, int s, int p) {
    return matrix_coefficient(matrix_potential(b, om), s, p);
}

// ---- Gaussian engine self-test ----------------------------------------------

// <z^p exp(a zbar)>_0 as an exact polynomial in a, computed from the raw
// moments <z^p zbar^k> = p! delta_{p,k}: the standard source identity gives a^p.
inline LaurentPoly gaussian_moment_exp_source(int p) {
    LaurentPoly r;
    for (int k = 0; k <= p + 2; ++k) {
        Rational moment = (k == p) ? factorial(p) : Rational(0);
        if (!moment.is_zero()) r.add(moment / factorial(k), k);
    }
    return r;
}

// Multivariate monomial moment: <prod z_i^{m_i} exp(sum a_i zbar_i)> evaluated
// at integer points, via independent one-variable moments.
inline Rational monomial_source_moment(const std::vector<int>& m, const std::vector<long long>& a) {
    Rational r(1);
    for (size_t i = 0; i < m.size(); ++i) {
        Rational pow(1);
        for (int k = 0; k < m[i]; ++k) pow *= Rational(a[i]);
        r *= pow;
    }
    return r;
}

struct PolyTerm {
    Rational coef;
    std::vector<int> exps;
};

inline Rational poly_eval(const std::vector<PolyTerm>& poly, const std::vector<long long>& a) {
    Rational r(0);
    for (const auto& t : poly) {
        Rational m = t.coef;
        for (size_t i = 0; i < t.exps.size(); ++i)
            for (int k = 0; k < t.exps[i]; ++k) m *= Rational(a[i]);
        r += m;
    }
    return r;
}

// <P Q exp(sum a_i zbar_i)> via the moment expansion of the product monomials.
inline Rational product_source_moment(const std::vector<PolyTerm>& P, const std::vector<PolyTerm>& Q,
                                      const std::vector<long long>& a) {
    Rational r(0);
    for (const auto& tp : P)
        for (const auto& tq : Q) {
            std::vector<int> m(tp.exps.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = tp.exps[i] + tq.exps[i];
            r += tp.coef * tq.coef * monomial_source_moment(m, a);
        }
    return r;
}

// Verifies <z^p e^{a zbar}> = a^p for p <= pmax and the product identity
// <P Q e^{sum a zbar}> = P(a) Q(a) on a deterministic set of small rational
// polynomials. Throws on any mismatch.
inline void wick_engine_selftest(int pmax = 6) {
    for (int p = 0; p <= pmax; ++p) {
        if (gaussian_moment_exp_source(p) != LaurentPoly::monomial(Rational(1), p))
            throw InternalCheckError("gaussian source identity failed at p=" + std::to_string(p));
    }
    // small fixed battery, including the z1 z2 * z1^2 at a=(2,5) case
    std::vector<PolyTerm> P1{{Rational(1), {1, 1}}};
    std::vector<PolyTerm> Q1{{Rational(1), {2, 0}}};
    std::vector<long long> a1{2, 5};
    if (product_source_moment(P1, Q1, a1) != Rational(40))
        throw InternalCheckError("product moment failed on z1 z2 * z1^2");

    std::vector<PolyTerm> P2{{Rational(3, 2), {2, 1}}, {Rational(-1, 3), {0, 2}}};
    std::vector<PolyTerm> Q2{{Rational(2), {1, 0}}, {Rational(5, 7), {0, 1}}};
    for (std::vector<long long> a : {std::vector<long long>{1, 1}, {3, -2}, {-4, 7}}) {
        if (product_source_moment(P2, Q2, a) != poly_eval(P2, a) * poly_eval(Q2, a))
            throw InternalCheckError("product moment failed on the rational battery");
    }
}

} // namespace cwm
