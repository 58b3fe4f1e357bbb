#ifndef HEXACURVE_LEGS_SEARCH_HPP
#define HEXACURVE_LEGS_SEARCH_HPP

// Implementation of search_legs; included from legs.hpp.

namespace hexacurve {

namespace legsearch {

struct Ctx {
    u64 p;
    const GFCtx* fp;
    std::vector<std::array<std::array<u64, 4>, 4>> Z;  // bilinear condition matrices
    LegSearchOptions opts;
    // results, canonicalized raw residues
    std::vector<std::pair<std::array<u64, 4>, std::array<u64, 4>>> found;
    bool truncated = false;
    bool positive_dim = false;
    std::uint64_t checked = 0;

    std::array<u64, 4> row_of(const std::array<std::array<u64, 4>, 4>& Zk,
                              const std::array<u64, 4>& u) const {
        std::array<u64, 4> r{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            u64 s = 0;
            for (int j = 0; j < 4; ++j) s = fp->sadd(s, fp->smul(Zk[i][j], u[j]));
            r[i] = s;
        }
        return r;
    }

    static std::array<u64, 4> normalize(std::array<u64, 4> v, const GFCtx* fp) {
        for (int i = 0; i < 4; ++i)
            if (v[i] != 0) {
                u64 inv = fp->sinv(v[i]);
                for (int j = 0; j < 4; ++j) v[j] = fp->smul(v[j], inv);
                return v;
            }
        return v;
    }

    // test one u; append all projective kernel直points (capped)
    void test_u(const std::array<u64, 4>& u) {
        ++checked;
        std::vector<std::array<u64, 4>> rows;
        rows.reserve(Z.size());
        for (auto& Zk : Z) rows.push_back(row_of(Zk, u));
        auto ker = SmallKernel::kernel(std::move(rows), p);
        if (ker.empty()) return;
        if (ker.size() >= 2) positive_dim = true;
        std::array<u64, 4> un = normalize(u, fp);
        if (ker.size() == 1) {
            emit(un, normalize(ker[0], fp));
            return;
        }
        // enumerate the projective kernel (dimension >= 2) up to the cap
        size_t d = ker.size();
        std::vector<u64> lambda(d, 0);
        // canonical reps: first nonzero coefficient = 1
        std::function<void(size_t, bool)> rec = [&](size_t i, bool lead) {
            if (found.size() >= opts.max_results) return;
            if (i == d) {
                if (!lead) return;
                std::array<u64, 4> v{0, 0, 0, 0};
                for (size_t t = 0; t < d; ++t)
                    for (int j = 0; j < 4; ++j) v[j] = fp->sadd(v[j], fp->smul(lambda[t], ker[t][j]));
                emit(un, normalize(v, fp));
                return;
            }
            if (!lead) {
                lambda[i] = 0;
                rec(i + 1, false);
                lambda[i] = 1;
                rec(i + 1, true);
            } else {
                for (u64 c = 0; c < p && found.size() < opts.max_results; ++c) {
                    lambda[i] = c;
                    rec(i + 1, true);
                }
            }
            lambda[i] = 0;
        };
        rec(0, false);
    }

    void emit(const std::array<u64, 4>& u, const std::array<u64, 4>& v) {
        if (opts.interior_only && (u[3] == 0 || v[3] == 0)) return;
        if (found.size() >= opts.max_results) {
            truncated = true;
            return;
        }
        found.emplace_back(u, v);
    }
};

using Tri = MultiPoly<GF>;  // polynomials in chart coordinates

// determinant of 4 affine-linear rows via Leibniz expansion
inline Tri det4_rows(GF f, const std::array<std::array<Tri, 4>, 4>& rows) {
    int perm[4] = {0, 1, 2, 3};
    Tri det(f, rows[0][0].nvars());
    do {
        int sgn = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (perm[i] > perm[j]) sgn = -sgn;
        Tri term = MultiPoly<GF>::constant(f, rows[0][0].nvars(), rows[0][0].weights(),
                                           f.from_int(sgn));
        for (int i = 0; i < 4; ++i) term = term * rows[i][perm[i]];
        det = det + term;
    } while (std::next_permutation(perm, perm + 4));
    return det;
}

// rows of [W u]^T for u = affine chart with nfree free variables appended to
// a fixed prefix; var i of the chart polynomial ring is chart coordinate i
inline std::array<std::array<Tri, 4>, 4> chart_rows(GF f,
                                                    const std::vector<std::array<std::array<u64, 4>, 4>>& W,
                                                    int nfree) {
    // u = (0,...,0,1, t_1, ..., t_nfree) with the 1 at position 3 - nfree
    std::array<std::array<Tri, 4>, 4> rows{{{Tri(f, nfree), Tri(f, nfree), Tri(f, nfree), Tri(f, nfree)},
                                            {Tri(f, nfree), Tri(f, nfree), Tri(f, nfree), Tri(f, nfree)},
                                            {Tri(f, nfree), Tri(f, nfree), Tri(f, nfree), Tri(f, nfree)},
                                            {Tri(f, nfree), Tri(f, nfree), Tri(f, nfree), Tri(f, nfree)}}};
    int one_pos = 3 - nfree;
    for (int t = 0; t < 4; ++t)
        for (int i = 0; i < 4; ++i) {
            Tri e(f, nfree);
            // constant part from the 1-slot
            Expo z(nfree, 0);
            e.add_term(z, f.from_int(i64(W[t][i][one_pos])));
            for (int j = 0; j < nfree; ++j) {
                Expo ev(nfree, 0);
                ev[j] = 1;
                e.add_term(ev, f.from_int(i64(W[t][i][one_pos + 1 + j])));
            }
            rows[t][i] = e;
        }
    return rows;
}

// univariate slice of a bivariate polynomial (vars b, c) at b = b0, in c
inline UniPoly<GF> slice_b(GF f, const Tri& D, const GFElem& b0) {
    UniPoly<GF> out(f);
    for (auto& [e, coef] : D.terms()) {
        GFElem v = coef * f.pow(b0, u64(e[0]));
        out.set_coeff(e[1], out.coeff(e[1]) + v);
    }
    return out;
}

// resultant in the last variable of two bivariate (b, c) polynomials, by
// interpolation over b with fixed-size Sylvester determinants
inline UniPoly<GF> resultant_c_bivariate(GF f, const Tri& D1, const Tri& D2, int d1, int d2,
                                         int out_degree) {
    std::vector<GFElem> xs, ys;
    for (int i = 0; i <= out_degree; ++i) {
        GFElem b0 = f.from_int(i);
        xs.push_back(b0);
        ys.push_back(sylvester_resultant(slice_b(f, D1, b0), slice_b(f, D2, b0), d1, d2));
    }
    return interpolate(f, xs, ys);
}

// trivariate (a, b, c) restricted to a = a0, as bivariate in (b, c)
inline Tri slice_a(GF f, const Tri& D, const GFElem& a0) {
    Tri out(f, 2);
    for (auto& [e, coef] : D.terms()) {
        Expo eb{e[1], e[2]};
        out.add_term(eb, coef * f.pow(a0, u64(e[0])));
    }
    return out;
}

inline std::vector<GFElem> distinct_roots_in_fp(const UniPoly<GF>& g, Rng& rng) {
    std::vector<GFElem> out;
    if (g.is_zero_poly()) return out;
    UniPoly<GF> h = g;
    // strip multiplicities first: roots of the squarefree part
    h = h / poly_gcd(h, h.derivative());
    Rng r2 = rng.fork(u64(g.degree()) + 77);
    for (auto& [root, mult] : roots_in_field(h, r2)) out.push_back(root);
    return out;
}

// solve the c-slice at a fixed (chart) point: gcd of all dets, roots, verify
inline void solve_c_line(Ctx& ctx, GF f, const std::vector<UniPoly<GF>>& slices,
                         const std::array<u64, 4>& u_prefix, int c_pos, Rng& rng) {
    UniPoly<GF> g = slices[0];
    for (size_t i = 1; i < slices.size(); ++i) g = poly_gcd(g, slices[i]);
    if (g.is_zero_poly()) {
        // degenerate line: every c is a candidate
        for (u64 c = 0; c < ctx.p; ++c) {
            std::array<u64, 4> u = u_prefix;
            u[c_pos] = c;
            ctx.test_u(u);
            if (ctx.found.size() >= ctx.opts.max_results) return;
        }
        return;
    }
    for (auto& root : distinct_roots_in_fp(g, rng)) {
        std::array<u64, 4> u = u_prefix;
        u[c_pos] = root.coeffs()[0];
        ctx.test_u(u);
        if (ctx.found.size() >= ctx.opts.max_results) return;
    }
}

}  // namespace legsearch

inline LegSearchResult<GF> search_legs(GF fld, const std::vector<LegForm<GF>>& dual_basis,
                                       const LegSearchOptions& opts) {
    require(fld.k() == 1 && fld.p() >= 3, errc::config_error,
            "leg search runs over an odd prime field");
    require(!dual_basis.empty(), errc::arity_mismatch, "empty span");
    using namespace legsearch;

    // bilinear condition matrices from the annihilator of the span
    std::vector<Vec<GF>> rows;
    for (auto& f : dual_basis) rows.emplace_back(f.w.begin(), f.w.end());
    auto rk = mat_rank_kernel(Mat<GF>::from_rows(fld, rows));

    Ctx ctx;
    ctx.p = fld.p();
    ctx.fp = fld.ctx();
    ctx.opts = opts;
    auto half_neg = [&](const GFElem& r) {  // r-slot coefficient enters as -r/2
        return -(fld.inv(fld.from_int(2)) * r);
    };
    for (auto& z : rk.kernel) {
        std::array<std::array<u64, 4>, 4> Zm{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                GFElem c = z[p16::A(i, j)];
                if (i == j) c = c - z[p16::H];
                Zm[i][j] = c.coeffs()[0];
            }
        for (int i = 0; i < 3; ++i) Zm[i][3] = z[p16::Y1 + i].coeffs()[0];
        for (int j = 0; j < 3; ++j) Zm[3][j] = z[p16::X1 + j].coeffs()[0];
        Zm[3][3] = half_neg(z[p16::R]).coeffs()[0];
        ctx.Z.push_back(Zm);
    }
    if (ctx.Z.empty()) {
        // the span is all of the dual space: every Segre point qualifies
        LegSearchResult<GF> out;
        out.positive_dimensional = true;
        out.truncated = true;
        return out;
    }

    Rng rng(opts.seed ^ 0x5eedULL);

    bool cascade = opts.strategy == LegSearchOptions::Strategy::Cascade ||
                   (opts.strategy == LegSearchOptions::Strategy::Auto && fld.p() >= 1024);
    if (ctx.Z.size() < 4) cascade = false;

    if (!cascade) {
        // exhaustive enumeration of P^3(F_p), partitioned across threads
        u64 p = ctx.p;
        int nthreads = std::max(1, opts.threads);
        std::vector<Ctx> parts(nthreads, ctx);
        auto work = [&](int t) {
            Ctx& c = parts[t];
            for (u64 a = t; a < p; a += u64(nthreads)) {
                for (u64 b = 0; b < p; ++b)
                    for (u64 cc = 0; cc < p; ++cc) {
                        c.test_u({1, a, b, cc});
                        if (c.found.size() >= c.opts.max_results) return;
                    }
            }
        };
        if (nthreads == 1) {
            work(0);
        } else {
            std::vector<std::thread> th;
            for (int t = 0; t < nthreads; ++t) th.emplace_back(work, t);
            for (auto& t : th) t.join();
        }
        for (int t = 0; t < nthreads; ++t) {
            auto& c = parts[t];
            ctx.found.insert(ctx.found.end(), c.found.begin(), c.found.end());
            ctx.truncated |= c.truncated;
            ctx.positive_dim |= c.positive_dim;
            ctx.checked += c.checked;
        }
        for (u64 b = 0; b < p && ctx.found.size() < opts.max_results; ++b)
            for (u64 c = 0; c < p && ctx.found.size() < opts.max_results; ++c)
                ctx.test_u({0, 1, b, c});
        for (u64 c = 0; c < p && ctx.found.size() < opts.max_results; ++c) ctx.test_u({0, 0, 1, c});
        ctx.test_u({0, 0, 0, 1});
    } else {
        // elimination cascade; retries draw fresh random combinations of the
        // condition matrices (true solutions annihilate every combination)
        bool done = false;
        for (int attempt = 0; attempt < 4 && !done; ++attempt) {
            Rng arng = rng.fork(u64(attempt));
            auto combos = [&](int count) {
                std::vector<std::array<std::array<u64, 4>, 4>> W(count);
                for (auto& Wt : W) {
                    for (auto& row : Wt) row = {0, 0, 0, 0};
                    for (auto& Zk : ctx.Z) {
                        u64 c = arng.below(ctx.p);
                        for (int i = 0; i < 4; ++i)
                            for (int j = 0; j < 4; ++j)
                                Wt[i][j] = ctx.fp->sadd(Wt[i][j], ctx.fp->smul(c, Zk[i][j]));
                    }
                }
                return W;
            };
            // ---- chart u = (1, a, b, c): two-level elimination ----
            // four determinants from four independent random quadruples of
            // condition combinations
            std::vector<Tri> D;
            for (int t = 0; t < 4; ++t) D.push_back(det4_rows(fld, chart_rows(fld, combos(4), 3)));
            // R_i(a, b) = Res_c(D_0, D_i)
            bool degenerate = false;
            std::vector<UniPoly<GF>> S;
            {
                std::vector<Tri> Rab;
                for (int i = 1; i <= 3; ++i) {
                    // interpolate over a: for each a-node, bivariate slice and 1-D resultant
                    std::vector<GFElem> xs;
                    std::vector<UniPoly<GF>> rb;
                    for (int na = 0; na <= 16; ++na) {
                        GFElem a0 = fld.from_int(na);
                        xs.push_back(a0);
                        rb.push_back(resultant_c_bivariate(fld, slice_a(fld, D[0], a0),
                                                           slice_a(fld, D[i], a0), 4, 4, 16));
                    }
                    // assemble a bivariate (a, b): coefficient of b^j interpolated in a
                    Tri Ri(fld, 2);
                    for (int j = 0; j <= 16; ++j) {
                        std::vector<GFElem> ys;
                        for (int na = 0; na <= 16; ++na) ys.push_back(rb[na].coeff(j));
                        UniPoly<GF> cj = interpolate(fld, xs, ys);
                        for (int ia = 0; ia <= cj.degree(); ++ia) {
                            if (is_zero(cj.coeff(ia))) continue;
                            Ri.add_term({ia, j}, cj.coeff(ia));
                        }
                    }
                    Rab.push_back(Ri);
                }
                // S_i(a) = Res_b(Rab_0, Rab_i), interpolated at 513 nodes
                for (int i = 1; i <= 2; ++i) {
                    std::vector<GFElem> xs, ys;
                    for (int na = 0; na <= 512; ++na) {
                        GFElem a0 = fld.from_int(na);
                        xs.push_back(a0);
                        ys.push_back(sylvester_resultant(slice_b(fld, Rab[0], a0) /* in b */,
                                                         slice_b(fld, Rab[i], a0), 16, 16));
                    }
                    S.push_back(interpolate(fld, xs, ys));
                }
                UniPoly<GF> g = poly_gcd(S[0], S[1]);
                if (S[0].is_zero_poly() && S[1].is_zero_poly()) {
                    degenerate = true;
                } else {
                    for (auto& aroot : distinct_roots_in_fp(g.is_zero_poly()
                                                                ? (S[0].is_zero_poly() ? S[1] : S[0])
                                                                : g,
                                                            arng)) {
                        // solve b on the slice a = aroot
                        std::vector<UniPoly<GF>> rb;
                        for (auto& Ri : Rab) rb.push_back(slice_b(fld, Ri, aroot));
                        UniPoly<GF> gb = rb[0];
                        for (size_t i = 1; i < rb.size(); ++i) gb = poly_gcd(gb, rb[i]);
                        std::vector<GFElem> bcands;
                        if (gb.is_zero_poly()) {
                            for (u64 b = 0; b < ctx.p; ++b) bcands.push_back(fld.from_int(i64(b)));
                        } else {
                            bcands = distinct_roots_in_fp(gb, arng);
                        }
                        for (auto& broot : bcands) {
                            std::vector<UniPoly<GF>> cs;
                            for (auto& Di : D)
                                cs.push_back(slice_b(fld, slice_a(fld, Di, aroot), broot));
                            solve_c_line(ctx, fld,
                                         cs, {1, aroot.coeffs()[0], broot.coeffs()[0], 0}, 3, arng);
                            if (ctx.found.size() >= opts.max_results) break;
                        }
                        if (ctx.found.size() >= opts.max_results) break;
                    }
                }
            }
            if (degenerate) {
                if (attempt == 3) {
                    ctx.positive_dim = true;
                    ctx.truncated = true;
                }
                continue;
            }

            // ---- chart u = (0, 1, b, c): one-level elimination ----
            {
                std::vector<Tri> D2v;
                for (int t = 0; t < 4; ++t)
                    D2v.push_back(det4_rows(fld, chart_rows(fld, combos(4), 2)));
                UniPoly<GF> R1 = resultant_c_bivariate(fld, D2v[0], D2v[1], 4, 4, 16);
                UniPoly<GF> R2 = resultant_c_bivariate(fld, D2v[0], D2v[2], 4, 4, 16);
                UniPoly<GF> g = poly_gcd(R1, R2);
                std::vector<GFElem> bcands;
                if (R1.is_zero_poly() && R2.is_zero_poly()) {
                    for (u64 b = 0; b < ctx.p; ++b) bcands.push_back(fld.from_int(i64(b)));
                } else {
                    bcands = distinct_roots_in_fp(g.is_zero_poly() ? (R1.is_zero_poly() ? R2 : R1) : g,
                                                  rng);
                }
                for (auto& broot : bcands) {
                    std::vector<UniPoly<GF>> cs;
                    for (auto& Di : D2v) cs.push_back(slice_b(fld, Di, broot));
                    solve_c_line(ctx, fld, cs, {0, 1, broot.coeffs()[0], 0}, 3, rng);
                    if (ctx.found.size() >= opts.max_results) break;
                }
            }

            // ---- charts u = (0,0,1,c) and u = (0,0,0,1) ----
            for (u64 c = 0; c < ctx.p && ctx.found.size() < opts.max_results; ++c)
                ctx.test_u({0, 0, 1, c});
            ctx.test_u({0, 0, 0, 1});
            done = true;
        }
    }

    // canonical order, dedup
    std::sort(ctx.found.begin(), ctx.found.end());
    ctx.found.erase(std::unique(ctx.found.begin(), ctx.found.end()), ctx.found.end());

    LegSearchResult<GF> out;
    out.truncated = ctx.truncated || ctx.found.size() >= opts.max_results;
    out.positive_dimensional = ctx.positive_dim;
    out.checked = ctx.checked;
    for (auto& [u, v] : ctx.found) {
        SegrePoint<GF> pt;
        for (int i = 0; i < 4; ++i) {
            pt.u[i] = fld.from_int(i64(u[i]));
            pt.v[i] = fld.from_int(i64(v[i]));
        }
        pt.interior = (u[3] != 0 && v[3] != 0);
        if (opts.interior_only && !pt.interior) continue;
        out.points.push_back(pt);
    }
    return out;
}

}  // namespace hexacurve

#endif
