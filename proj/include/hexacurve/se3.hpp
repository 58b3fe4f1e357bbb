#ifndef HEXACURVE_SE3_HPP
#define HEXACURVE_SE3_HPP

#include <array>
#include <string>
#include <vector>

#include "multipoly.hpp"

namespace hexacurve {

// Variable frame of the weighted model: coordinates (e0:e1:e2:e3:x1:x2:x3:y1:y2:y3:r)
// with weights (1,1,1,1,2,2,2,2,2,2,2).
namespace w11 {
inline constexpr int E0 = 0, E1 = 1, E2 = 2, E3 = 3;
inline constexpr int X1 = 4, X2 = 5, X3 = 6;
inline constexpr int Y1 = 7, Y2 = 8, Y3 = 9;
inline constexpr int R = 10;
inline constexpr int NV = 11;
inline std::vector<int> weights() { return {1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2}; }
inline std::vector<std::string> names() {
    return {"e0", "e1", "e2", "e3", "x1", "x2", "x3", "y1", "y2", "y3", "r"};
}
}  // namespace w11

// Layout of the 17 coordinates of the big projective model:
// (a11,a12,a13,a21,a22,a23,a31,a32,a33, x1,x2,x3, y1,y2,y3, r, h).
namespace p16 {
inline constexpr int A(int i, int j) { return 3 * i + j; }
inline constexpr int X1 = 9, X2 = 10, X3 = 11;
inline constexpr int Y1 = 12, Y2 = 13, Y3 = 14;
inline constexpr int R = 15, H = 16;
inline constexpr int NV = 17;
}  // namespace p16

template <class F>
struct Isometry {
    std::array<typename F::Elem, 4> e;  // rotation in homogeneous quaternion coordinates
    std::array<typename F::Elem, 3> y;  // translation
};

template <class F>
struct WeightedPoint {
    std::array<typename F::Elem, 11> c;
};

template <class F>
struct AmbientPoint16 {
    std::array<typename F::Elem, 17> c;
};

enum class BondType { Inversion, Butterfly, Similarity, Collinearity, Vertex, NotABond };

inline const char* bond_name(BondType b) {
    switch (b) {
        case BondType::Inversion: return "inversion";
        case BondType::Butterfly: return "butterfly";
        case BondType::Similarity: return "similarity";
        case BondType::Collinearity: return "collinearity";
        case BondType::Vertex: return "vertex";
        case BondType::NotABond: return "not_a_bond";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Euler's rotation matrix. euler_rotation returns the unscaled matrix
// E(e) = h * eta(e); when h != 0, E/h is orthogonal with determinant 1.
// ---------------------------------------------------------------------------

template <class F>
std::array<std::array<typename F::Elem, 3>, 3> euler_rotation(F fld,
                                                              const std::array<typename F::Elem, 4>& e) {
    const auto &e0 = e[0], &e1 = e[1], &e2 = e[2], &e3 = e[3];
    auto two = fld.from_int(2);
    std::array<std::array<typename F::Elem, 3>, 3> m{{
        {e0 * e0 + e1 * e1 - e2 * e2 - e3 * e3, two * (e1 * e2 - e0 * e3), two * (e0 * e2 + e1 * e3)},
        {two * (e1 * e2 + e0 * e3), e0 * e0 - e1 * e1 + e2 * e2 - e3 * e3, two * (e2 * e3 - e0 * e1)},
        {two * (e1 * e3 - e0 * e2), two * (e0 * e1 + e2 * e3), e0 * e0 - e1 * e1 - e2 * e2 + e3 * e3},
    }};
    return m;
}

// symbolic twin over the first four variables of an n-variable frame
template <class F>
std::array<std::array<MultiPoly<F>, 3>, 3> euler_rotation_sym(F fld, int nvars,
                                                              const std::vector<int>& weights) {
    std::vector<MultiPoly<F>> e;
    for (int i = 0; i < 4; ++i) e.push_back(MultiPoly<F>::variable(fld, nvars, weights, i));
    auto two = fld.from_int(2);
    auto sq = [](const MultiPoly<F>& p) { return p * p; };
    std::array<std::array<MultiPoly<F>, 3>, 3> m{{
        {sq(e[0]) + sq(e[1]) - sq(e[2]) - sq(e[3]), two * (e[1] * e[2] - e[0] * e[3]),
         two * (e[0] * e[2] + e[1] * e[3])},
        {two * (e[1] * e[2] + e[0] * e[3]), sq(e[0]) - sq(e[1]) + sq(e[2]) - sq(e[3]),
         two * (e[2] * e[3] - e[0] * e[1])},
        {two * (e[1] * e[3] - e[0] * e[2]), two * (e[0] * e[1] + e[2] * e[3]),
         sq(e[0]) - sq(e[1]) - sq(e[2]) + sq(e[3])},
    }};
    return m;
}

template <class F>
typename F::Elem euler_h(F, const std::array<typename F::Elem, 4>& e) {
    return e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3];
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

// image of a direct isometry in the 17-coordinate model, scaled by h:
// (E(e) : -E(e)^T y : h y : h <y,y> : h)
template <class F>
AmbientPoint16<F> embed_phi(F fld, const Isometry<F>& iso) {
    auto h = euler_h(fld, iso.e);
    require(!is_zero(h), errc::invalid_isometry, "h = 0 does not define a rotation");
    auto E = euler_rotation(fld, iso.e);
    AmbientPoint16<F> p{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p.c[p16::A(i, j)] = E[i][j];
    for (int j = 0; j < 3; ++j) {
        auto xj = fld.zero();
        for (int i = 0; i < 3; ++i) xj -= E[i][j] * iso.y[i];
        p.c[p16::X1 + j] = xj;
    }
    auto yy = fld.zero();
    for (int i = 0; i < 3; ++i) {
        p.c[p16::Y1 + i] = h * iso.y[i];
        yy += iso.y[i] * iso.y[i];
    }
    p.c[p16::R] = h * yy;
    p.c[p16::H] = h;
    return p;
}

// weighted point of an isometry: (e : -E^T y : h y : h <y,y>)
template <class F>
WeightedPoint<F> isometry_to_weighted(F fld, const Isometry<F>& iso) {
    auto h = euler_h(fld, iso.e);
    require(!is_zero(h), errc::invalid_isometry, "h = 0 does not define a rotation");
    auto E = euler_rotation(fld, iso.e);
    WeightedPoint<F> w{};
    for (int i = 0; i < 4; ++i) w.c[w11::E0 + i] = iso.e[i];
    for (int j = 0; j < 3; ++j) {
        auto xj = fld.zero();
        for (int i = 0; i < 3; ++i) xj -= E[i][j] * iso.y[i];
        w.c[w11::X1 + j] = xj;
    }
    auto yy = fld.zero();
    for (int i = 0; i < 3; ++i) {
        w.c[w11::Y1 + i] = h * iso.y[i];
        yy += iso.y[i] * iso.y[i];
    }
    w.c[w11::R] = h * yy;
    return w;
}

// the 2-uple style embedding of the weighted model into the 17 coordinates
template <class F>
AmbientPoint16<F> weighted_to_p16(F fld, const WeightedPoint<F>& w) {
    std::array<typename F::Elem, 4> e{w.c[0], w.c[1], w.c[2], w.c[3]};
    auto E = euler_rotation(fld, e);
    AmbientPoint16<F> p{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p.c[p16::A(i, j)] = E[i][j];
    for (int i = 0; i < 3; ++i) {
        p.c[p16::X1 + i] = w.c[w11::X1 + i];
        p.c[p16::Y1 + i] = w.c[w11::Y1 + i];
    }
    p.c[p16::R] = w.c[w11::R];
    p.c[p16::H] = euler_h(fld, e);
    return p;
}

template <class F>
std::array<typename F::Elem, 4> project_euler(F, const WeightedPoint<F>& w) {
    bool all_zero = true;
    for (int i = 0; i < 4; ++i)
        if (!is_zero(w.c[i])) all_zero = false;
    require(!all_zero, errc::center_of_projection, "point lies in the projection center e = 0");
    return {w.c[0], w.c[1], w.c[2], w.c[3]};
}

// ---------------------------------------------------------------------------
// Pfaffians and the defining equations
// ---------------------------------------------------------------------------

template <class F>
bool is_zero_like(const MultiPoly<F>& p) {
    return p.is_zero_poly();
}
inline bool is_zero_like(const Rat& a) { return is_zero(a); }
inline bool is_zero_like(const GFElem& a) { return a.is_zero(); }

// Pfaffian m01 m23 - m02 m13 + m03 m12 of a 4x4 skew matrix; works for any
// element type with ring operators and is_zero
template <class T>
T pfaffian4(const std::array<std::array<T, 4>, 4>& m) {
    for (int i = 0; i < 4; ++i) {
        require(is_zero_like(m[i][i]), errc::not_skew, "nonzero diagonal");
        for (int j = i + 1; j < 4; ++j)
            require(is_zero_like(m[i][j] + m[j][i]), errc::not_skew, "matrix is not skew-symmetric");
    }
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2];
}

// the five principal 4x4 Pfaffians of a 5x5 skew matrix, P_i from deleting
// row and column i
template <class T>
std::array<T, 5> pfaffians5(const std::array<std::array<T, 5>, 5>& m) {
    for (int i = 0; i < 5; ++i) {
        require(is_zero_like(m[i][i]), errc::not_skew, "nonzero diagonal");
        for (int j = i + 1; j < 5; ++j)
            require(is_zero_like(m[i][j] + m[j][i]), errc::not_skew, "matrix is not skew-symmetric");
    }
    auto pf = [&](int a, int b, int c, int d) {
        return m[a][b] * m[c][d] - m[a][c] * m[b][d] + m[a][d] * m[b][c];
    };
    return {pf(1, 2, 3, 4), pf(0, 2, 3, 4), pf(0, 1, 3, 4), pf(0, 1, 2, 4), pf(0, 1, 2, 3)};
}

// the 5x5 skew matrix M with entries +-x_i +- y_i bordered by the e's
template <class F>
std::array<std::array<MultiPoly<F>, 5>, 5> se3_pfaffian_matrix(F fld) {
    auto W = w11::weights();
    auto V = [&](int i) { return MultiPoly<F>::variable(fld, w11::NV, W, i); };
    auto Z = MultiPoly<F>(fld, w11::NV, W);
    auto e0 = V(w11::E0), e1 = V(w11::E1), e2 = V(w11::E2), e3 = V(w11::E3);
    auto x1 = V(w11::X1), x2 = V(w11::X2), x3 = V(w11::X3);
    auto y1 = V(w11::Y1), y2 = V(w11::Y2), y3 = V(w11::Y3);
    std::array<std::array<MultiPoly<F>, 5>, 5> m{{
        {Z, y1 - x1, y2 - x2, y3 - x3, e0},
        {x1 - y1, Z, x3 + y3, -(x2 + y2), e1},
        {x2 - y2, -(x3 + y3), Z, x1 + y1, e2},
        {x3 - y3, x2 + y2, -(x1 + y1), Z, e3},
        {-e0, -e1, -e2, -e3, Z},
    }};
    return m;
}

// the five Pfaffians P_0..P_4 plus the quartic y1^2+y2^2+y3^2 - r h
template <class F>
std::vector<MultiPoly<F>> se3_equations(F fld) {
    auto P = pfaffians5(se3_pfaffian_matrix(fld));
    auto W = w11::weights();
    auto V = [&](int i) { return MultiPoly<F>::variable(fld, w11::NV, W, i); };
    auto quartic = V(w11::Y1) * V(w11::Y1) + V(w11::Y2) * V(w11::Y2) + V(w11::Y3) * V(w11::Y3) -
                   V(w11::R) * (V(w11::E0) * V(w11::E0) + V(w11::E1) * V(w11::E1) +
                                V(w11::E2) * V(w11::E2) + V(w11::E3) * V(w11::E3));
    std::vector<MultiPoly<F>> out(P.begin(), P.end());
    out.push_back(quartic);
    return out;
}

// skew blocks of the border ideal; sign patterns follow the quaternion
// multiplication matrices, making the degree-4 Pfaffians the quadric sums
template <class F>
std::array<std::array<MultiPoly<F>, 5>, 5> border_block_x(F fld) {
    auto W = w11::weights();
    auto V = [&](int i) { return MultiPoly<F>::variable(fld, w11::NV, W, i); };
    auto Z = MultiPoly<F>(fld, w11::NV, W);
    auto e0 = V(w11::E0), e1 = V(w11::E1), e2 = V(w11::E2), e3 = V(w11::E3);
    auto x1 = V(w11::X1), x2 = V(w11::X2), x3 = V(w11::X3);
    std::array<std::array<MultiPoly<F>, 5>, 5> m{{
        {Z, x1, x2, x3, e0},
        {-x1, Z, -x3, x2, e1},
        {-x2, x3, Z, -x1, e2},
        {-x3, -x2, x1, Z, e3},
        {-e0, -e1, -e2, -e3, Z},
    }};
    return m;
}

template <class F>
std::array<std::array<MultiPoly<F>, 5>, 5> border_block_y(F fld) {
    auto W = w11::weights();
    auto V = [&](int i) { return MultiPoly<F>::variable(fld, w11::NV, W, i); };
    auto Z = MultiPoly<F>(fld, w11::NV, W);
    auto e0 = V(w11::E0), e1 = V(w11::E1), e2 = V(w11::E2), e3 = V(w11::E3);
    auto y1 = V(w11::Y1), y2 = V(w11::Y2), y3 = V(w11::Y3);
    std::array<std::array<MultiPoly<F>, 5>, 5> m{{
        {Z, y1, y2, y3, e0},
        {-y1, Z, y3, -y2, e1},
        {-y2, -y3, Z, y1, e2},
        {-y3, y2, -y1, Z, e3},
        {-e0, -e1, -e2, -e3, Z},
    }};
    return m;
}

// generators of the border: h plus the four degree-3 Pfaffians of each block
template <class F>
std::vector<MultiPoly<F>> boundary_equations(F fld) {
    auto W = w11::weights();
    auto V = [&](int i) { return MultiPoly<F>::variable(fld, w11::NV, W, i); };
    std::vector<MultiPoly<F>> out;
    out.push_back(V(w11::E0) * V(w11::E0) + V(w11::E1) * V(w11::E1) + V(w11::E2) * V(w11::E2) +
                  V(w11::E3) * V(w11::E3));
    auto PX = pfaffians5(border_block_x(fld));
    auto PY = pfaffians5(border_block_y(fld));
    for (int i = 0; i < 4; ++i) out.push_back(PX[i]);
    for (int i = 0; i < 4; ++i) out.push_back(PY[i]);
    return out;
}

// the degree-4 Pfaffians of the two border blocks (x- and y-quadric sums up to sign)
template <class F>
std::array<MultiPoly<F>, 2> boundary_quadric_pfaffians(F fld) {
    return {pfaffians5(border_block_x(fld))[4], pfaffians5(border_block_y(fld))[4]};
}

template <class F>
bool on_variety(F fld, const WeightedPoint<F>& w) {
    std::vector<typename F::Elem> pt(w.c.begin(), w.c.end());
    for (const auto& eq : se3_equations(fld))
        if (!is_zero(poly_eval(eq, pt))) return false;
    return true;
}

// same check against a cached equation list (the equations are constant)
template <class F>
bool on_variety(const std::vector<MultiPoly<F>>& eqs, const WeightedPoint<F>& w) {
    std::vector<typename F::Elem> pt(w.c.begin(), w.c.end());
    for (const auto& eq : eqs)
        if (!is_zero(poly_eval(eq, pt))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Bond classification on the 17-coordinate model, N = r A + 2 y x^T
// ---------------------------------------------------------------------------

template <class F>
BondType classify_bond(F fld, const AmbientPoint16<F>& p) {
    if (!is_zero(p.c[p16::H])) return BondType::NotABond;
    bool a_zero = true;
    for (int i = 0; i < 9; ++i)
        if (!is_zero(p.c[i])) a_zero = false;
    bool x_zero = is_zero(p.c[p16::X1]) && is_zero(p.c[p16::X2]) && is_zero(p.c[p16::X3]);
    bool y_zero = is_zero(p.c[p16::Y1]) && is_zero(p.c[p16::Y2]) && is_zero(p.c[p16::Y3]);
    if (a_zero) {
        if (x_zero && y_zero) return BondType::Vertex;
        if (!x_zero && !y_zero) return BondType::Similarity;
        return BondType::Collinearity;
    }
    auto two = fld.from_int(2);
    bool n_zero = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto n = p.c[p16::R] * p.c[p16::A(i, j)] + two * p.c[p16::Y1 + i] * p.c[p16::X1 + j];
            if (!is_zero(n)) n_zero = false;
        }
    return n_zero ? BondType::Butterfly : BondType::Inversion;
}

// seeded random isometry with small rational (or mod-p) entries; retries until h != 0
template <class F>
Isometry<F> random_isometry(F fld, Rng& rng) {
    for (;;) {
        Isometry<F> iso;
        for (int i = 0; i < 4; ++i) iso.e[i] = fld.random(rng);
        for (int i = 0; i < 3; ++i) iso.y[i] = fld.random(rng);
        if (!is_zero(euler_h(fld, iso.e))) return iso;
    }
}

template <class F>
WeightedPoint<F> identity_weighted(F fld) {
    WeightedPoint<F> w{};
    for (auto& c : w.c) c = fld.zero();
    w.c[w11::E0] = fld.one();
    return w;
}

}  // namespace hexacurve

#endif
