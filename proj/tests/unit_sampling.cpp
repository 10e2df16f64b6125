#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "convexlab/exact.hpp"
#include "convexlab/sampling.hpp"
#include "convexlab/stats.hpp"
#include "doctest.h"

using namespace convexlab;

TEST_CASE("uniform_in_polygon stays inside and matches the centroid") {
    for (int kappa : {3, 5, 7}) {
        const auto poly = make_polygon(kappa);
        RngStream rng(11u + static_cast<unsigned>(kappa));
        const int reps = 100000;
        Vec2 acc{0, 0};
        for (int i = 0; i < reps; ++i) {
            const Vec2 p = uniform_in_polygon(poly, rng);
            REQUIRE(poly.contains(p, 1e-12));
            acc += p;
        }
        const Vec2 mean = (1.0 / reps) * acc;
        const Vec2 c = polygon_centroid(poly.vertices);
        // each coordinate has variance < 1, so 3 sigma is ~0.01 here
        CHECK(std::fabs(mean.x - c.x) < 0.012);
        CHECK(std::fabs(mean.y - c.y) < 0.012);
    }
}

TEST_CASE("uniform_in_polygon chi-square over a clipped grid") {
    const auto poly = make_polygon(5);
    RngStream rng(123);
    const int reps = 100000;
    // 4x4 grid over the bounding box, cells clipped to the polygon
    double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (const Vec2& v : poly.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    std::vector<double> expected;
    std::vector<long long> observed;
    std::vector<std::pair<Vec2, Vec2>> cells;
    for (int ix = 0; ix < 4; ++ix)
        for (int iy = 0; iy < 4; ++iy) {
            const Vec2 lo{xmin + (xmax - xmin) * ix / 4.0, ymin + (ymax - ymin) * iy / 4.0};
            const Vec2 hi{xmin + (xmax - xmin) * (ix + 1) / 4.0,
                          ymin + (ymax - ymin) * (iy + 1) / 4.0};
            auto cell = clip_halfplane(poly.vertices, {1, 0}, lo.x);
            cell = clip_halfplane(cell, {-1, 0}, -hi.x);
            cell = clip_halfplane(cell, {0, 1}, lo.y);
            cell = clip_halfplane(cell, {0, -1}, -hi.y);
            const double area = cell.size() >= 3 ? polygon_area(cell) : 0.0;
            if (area <= 0.0) continue;
            cells.emplace_back(lo, hi);
            expected.push_back(area * reps);
            observed.push_back(0);
        }
    for (int i = 0; i < reps; ++i) {
        const Vec2 p = uniform_in_polygon(poly, rng);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (p.x >= cells[c].first.x && p.x < cells[c].second.x &&
                p.y >= cells[c].first.y && p.y < cells[c].second.y) {
                observed[c]++;
                break;
            }
        }
    }
    const auto res = stats::chi2_test(observed, expected);
    CHECK(res.p_value > 0.001);
}

TEST_CASE("is_convex_position basics") {
    CHECK(is_convex_position(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}}));
    CHECK_FALSE(is_convex_position(
        std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}}));
    // vertices of a regular 10-gon
    const auto poly10 = make_polygon(10);
    CHECK(is_convex_position(poly10.vertices));
    // collinear triple counts as non-convex
    CHECK_FALSE(is_convex_position(
        std::vector<Vec2>{{0, 0}, {0.5, 0.0}, {1, 0}, {0, 1}}));
    CHECK_THROWS_AS(is_convex_position(std::vector<Vec2>{{0, 0}, {1, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_convex_position(std::vector<Vec2>{{0, 0}, {1, 1}, {1, 1}}),
                    std::invalid_argument);
}

TEST_CASE("canonical order starts bottom-left and turns left") {
    std::vector<Vec2> scrambled = {{1, 1}, {0, 0}, {1, 0}, {0, 1}};
    const auto ordered = canonical_order(scrambled);
    CHECK(ordered[0] == Vec2{0, 0});
    CHECK(ordered[1] == Vec2{1, 0});
    CHECK(ordered[2] == Vec2{1, 1});
    CHECK(ordered[3] == Vec2{0, 1});
    // idempotence
    CHECK(canonical_order(ordered) == ordered);
    // canonical conditions on a random convex tuple
    RngStream rng(5);
    const auto poly = make_polygon(6);
    for (int rep = 0; rep < 50; ++rep) {
        const auto cfg = rejection_sample(poly, 6, rng).config;
        const auto& pts = cfg.points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(pts[0].y <= pts[i].y + 1e-15);
        }
        double prev_arg = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double a = std::atan2(pts[i + 1].y - pts[i].y, pts[i + 1].x - pts[i].x);
            if (a < 0) a += 2 * std::numbers::pi;
            CHECK(a >= prev_arg - 1e-12);
            prev_arg = a;
        }
        CHECK(is_convex_position(pts));
    }
    CHECK_THROWS_AS(
        canonical_order(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}}),
        std::domain_error);
}

TEST_CASE("rejection sampler: n=3 always accepted, estimates match exact values") {
    const auto poly3 = make_polygon(3);
    RngStream rng(17);
    for (int i = 0; i < 20; ++i) CHECK(rejection_sample(poly3, 3, rng).trials == 1);

    // 1/mean(trials) is a consistent estimator of the convex-position odds:
    // trials is geometric with success probability P_3(5)
    const int successes = 20000;
    long long total_trials = 0;
    for (int i = 0; i < successes; ++i)
        total_trials += rejection_sample(poly3, 5, rng).trials;
    const double p_hat = static_cast<double>(successes) / static_cast<double>(total_trials);
    const double p = exact::p_triangle(5).to_double();  // 11/36
    // std of the geometric-mean estimator ~ p sqrt((1-p)/successes)
    const double se = p * std::sqrt((1.0 - p) / successes);
    CHECK(std::fabs(p_hat - p) < 4.0 * se);
}

TEST_CASE("ecp_of on hand-built configurations") {
    for (int kappa : {3, 4, 5}) {
        const auto poly = make_polygon(kappa);
        // side midpoints: distances all zero, ECP is the host polygon, gaps 1
        auto cfg = ecp_of(poly, poly.midpoints);
        for (int j = 0; j < kappa; ++j) {
            CHECK(cfg.ell[static_cast<std::size_t>(j)] == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(cfg.size_vector[static_cast<std::size_t>(j)] == 1);
            CHECK(cfg.ecp.side_len[static_cast<std::size_t>(j)] ==
                  doctest::Approx(poly.r).epsilon(1e-12));
        }
        // contact point j is the midpoint of side j
        for (int j = 0; j < kappa; ++j) {
            const Vec2 cp = cfg.points[static_cast<std::size_t>(
                cfg.contact_index[static_cast<std::size_t>(j)])];
            CHECK(dist(cp, poly.midpoints[static_cast<std::size_t>(j)]) < 1e-12);
        }
    }
    const auto poly = make_polygon(4);
    CHECK_THROWS_AS(ecp_of(poly, std::vector<Vec2>{{0.5, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(
        ecp_of(poly, std::vector<Vec2>{{-1, 0}, {0.5, 0.5}, {0.5, 0.6}}),
        std::domain_error);
}

TEST_CASE("assemble/ecp_of round trip on the size vector and distances") {
    const auto poly = make_polygon(5);
    RngStream rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 5 + static_cast<int>(rng.below(12));
        const auto ell = sample_ell(poly, n, rng);
        const auto ecp = side_lengths(poly, ell);
        REQUIRE(ecp.has_value());
        std::vector<double> c_tilde(5);
        for (int j = 0; j < 5; ++j) c_tilde[static_cast<std::size_t>(j)] = ecp->side_len[static_cast<std::size_t>(j)] / poly.m_const;
        const auto s = sample_sizes(poly, c_tilde, n, rng);
        const auto cfg = assemble_points(poly, ell, s, rng);
        REQUIRE(cfg.n == n);
        CHECK(is_convex_position(cfg.points));
        for (const Vec2& p : cfg.points) CHECK(poly.contains(p, 1e-9));

        const auto back = ecp_of(poly, cfg.points);
        for (int j = 0; j < 5; ++j) {
            CHECK(back.size_vector[static_cast<std::size_t>(j)] ==
                  s[static_cast<std::size_t>(j)]);
            CHECK(std::fabs(back.ell[static_cast<std::size_t>(j)] -
                            ell[static_cast<std::size_t>(j)]) < 1e-9);
        }
        // the sampler already reports the same data
        for (int j = 0; j < 5; ++j)
            CHECK(cfg.size_vector[static_cast<std::size_t>(j)] == s[static_cast<std::size_t>(j)]);
    }
}

TEST_CASE("pairing count: m! distinct chains with a common endpoint") {
    // fixed generic increment multisets, all 3! pairings
    const std::vector<double> xs = {0.11, 0.35, 0.54};
    const std::vector<double> ys = {0.2, 0.33, 0.47};
    std::vector<int> perm = {0, 1, 2};
    std::set<std::vector<double>> signatures;
    Vec2 endpoint_ref{0, 0};
    bool first = true;
    do {
        std::vector<std::pair<double, double>> vecs;
        for (int i = 0; i < 3; ++i)
            vecs.emplace_back(xs[static_cast<std::size_t>(i)],
                              ys[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        std::sort(vecs.begin(), vecs.end(), [](const auto& p, const auto& q) {
            return p.second * q.first < q.second * p.first;
        });
        // chain signature: the interior points
        std::vector<double> sig;
        Vec2 cur{0, 0};
        for (int i = 0; i < 2; ++i) {
            cur += Vec2{vecs[static_cast<std::size_t>(i)].first,
                        vecs[static_cast<std::size_t>(i)].second};
            sig.push_back(cur.x);
            sig.push_back(cur.y);
        }
        cur += Vec2{vecs[2].first, vecs[2].second};
        if (first) {
            endpoint_ref = cur;
            first = false;
        } else {
            CHECK(dist(cur, endpoint_ref) < 1e-14);
        }
        signatures.insert(sig);
        // convexity of each chain
        const Vec2 e0{vecs[0].first, vecs[0].second};
        const Vec2 e1{vecs[1].first, vecs[1].second};
        const Vec2 e2{vecs[2].first, vecs[2].second};
        CHECK(cross(e0, e1) >= 0);
        CHECK(cross(e1, e2) >= 0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(signatures.size() == 6);
}

TEST_CASE("reconstruction count from reordered increments (kappa=3, n=4)") {
    const auto poly = make_polygon(3);
    const std::vector<int> s = {2, 1, 1};
    // N_j = s_j + s_{j+1} - 1 per side
    const std::vector<int> nj = {2, 1, 2};
    const std::vector<double> ell = {0.05, 0.08, 0.03};
    const auto ecp = side_lengths(poly, ell);
    REQUIRE(ecp.has_value());

    // one fixed generic multiset of increments per side (N_j + 1 pieces
    // summing to c_j), kept sorted increasingly as the canonical fiber label
    std::vector<std::vector<double>> pieces(3);
    RngStream rng(7);
    for (int j = 0; j < 3; ++j) {
        const double c = ecp->side_len[static_cast<std::size_t>(j)];
        const auto cuts = rng.sorted_uniforms(nj[static_cast<std::size_t>(j)], c);
        double prev = 0;
        for (double cut : cuts) {
            pieces[static_cast<std::size_t>(j)].push_back(cut - prev);
            prev = cut;
        }
        pieces[static_cast<std::size_t>(j)].push_back(c - prev);
        std::sort(pieces[static_cast<std::size_t>(j)].begin(),
                  pieces[static_cast<std::size_t>(j)].end());
    }

    // enumerate all ways to pick which pieces of side j feed the corner before
    // the contact point and pair them with the next side's chosen pieces
    long long count = 0;
    std::set<std::vector<double>> configs;
    const auto subsets_of = [](int total, int choose) {
        std::vector<std::vector<int>> subs;
        std::vector<int> idx(static_cast<std::size_t>(choose));
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == choose) {
                subs.push_back(idx);
                return;
            }
            for (int i = start; i < total; ++i) {
                idx[static_cast<std::size_t>(depth)] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
        return subs;
    };
    const auto perms_of = [](int m) {
        std::vector<std::vector<int>> ps;
        std::vector<int> p(static_cast<std::size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        do ps.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return ps;
    };

    // side j contributes s_j "incoming" pieces (before the contact point) and
    // s_{j+1} "outgoing" pieces; corner j pairs outgoing-of-j with
    // incoming-of-(j+1) in any order
    const auto choice0 = subsets_of(nj[0] + 1, s[0]);
    const auto choice1 = subsets_of(nj[1] + 1, s[1]);
    const auto choice2 = subsets_of(nj[2] + 1, s[2]);
    for (const auto& c0 : choice0)
        for (const auto& c1 : choice1)
            for (const auto& c2 : choice2) {
                const auto build_partition = [&](int j, const std::vector<int>& incoming_idx) {
                    // incoming pieces first (sorted), then the outgoing ones:
                    // the partition of side j in traversal order
                    std::vector<double> in_pieces, out_pieces;
                    const auto& all = pieces[static_cast<std::size_t>(j)];
                    std::vector<bool> used(all.size(), false);
                    for (int i : incoming_idx) {
                        in_pieces.push_back(all[static_cast<std::size_t>(i)]);
                        used[static_cast<std::size_t>(i)] = true;
                    }
                    for (std::size_t i = 0; i < all.size(); ++i)
                        if (!used[i]) out_pieces.push_back(all[i]);
                    return std::make_pair(in_pieces, out_pieces);
                };
                auto [in0, out0] = build_partition(0, c0);
                auto [in1, out1] = build_partition(1, c1);
                auto [in2, out2] = build_partition(2, c2);
                // corner j: pair out_j with in_{j+1} under every bijection
                const auto& outs0 = out0;
                for (const auto& p0 : perms_of(static_cast<int>(outs0.size())))
                    for (const auto& p1 : perms_of(static_cast<int>(out1.size())))
                        for (const auto& p2 : perms_of(static_cast<int>(out2.size()))) {
                            // reconstruct a configuration: vectors per corner
                            std::vector<double> sig;
                            Vec2 cur{0, 0};
                            const auto walk_corner = [&](int j, const std::vector<double>& out,
                                                         const std::vector<double>& in_next,
                                                         const std::vector<int>& pairing) {
                                std::vector<std::pair<double, double>> vecs;
                                for (std::size_t t = 0; t < out.size(); ++t)
                                    vecs.emplace_back(out[t], in_next[static_cast<std::size_t>(
                                                                  pairing[t])]);
                                std::sort(vecs.begin(), vecs.end(),
                                          [](const auto& a, const auto& b) {
                                              return a.second * b.first < b.second * a.first;
                                          });
                                const Mat2 m = corner_map_inverse(poly, j);
                                for (const auto& v : vecs) {
                                    cur += m.apply({v.first, v.second});
                                    sig.push_back(cur.x);
                                    sig.push_back(cur.y);
                                }
                            };
                            walk_corner(0, out0, in1, p0);
                            walk_corner(1, out1, in2, p1);
                            walk_corner(2, out2, in0, p2);
                            configs.insert(sig);
                            ++count;
                        }
            }
    // product of C(s_j + s_{j+1}, s_j) s_j! over the three sides
    long long expect = 1;
    const auto binom = [](int a, int b) {
        long long r = 1;
        for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    const auto fact = [](int a) {
        long long r = 1;
        for (int i = 2; i <= a; ++i) r *= i;
        return r;
    };
    for (int j = 0; j < 3; ++j)
        expect *= binom(s[static_cast<std::size_t>(j)] + s[static_cast<std::size_t>((j + 1) % 3)],
                        s[static_cast<std::size_t>(j)]) *
                  fact(s[static_cast<std::size_t>(j)]);
    CHECK(count == expect);
    CHECK(static_cast<long long>(configs.size()) == expect);
}

TEST_CASE("simplex hit rates: ordered tuples among k uniforms") {
    RngStream rng(77);
    for (int k = 2; k <= 5; ++k) {
        const int reps = 200000;
        int hits = 0;
        const double ell = 0.8;
        for (int i = 0; i < reps; ++i) {
            bool sorted = true;
            double prev = -1.0;
            for (int t = 0; t < k; ++t) {
                const double v = rng.uniform(0.0, ell);
                if (v < prev) sorted = false;
                prev = v;
            }
            hits += sorted;
        }
        double expect = 1.0;
        for (int t = 2; t <= k; ++t) expect /= t;
        const double se = std::sqrt(expect * (1 - expect) / reps);
        CHECK(std::fabs(static_cast<double>(hits) / reps - expect) < 3.5 * se);
    }
}

TEST_CASE("determinism: same seed, same configuration") {
    const auto poly = make_polygon(4);
    RngStream r1(2024), r2(2024);
    const auto c1 = kappa_sample(poly, 12, r1);
    const auto c2 = kappa_sample(poly, 12, r2);
    REQUIRE(c1.points.size() == c2.points.size());
    for (std::size_t i = 0; i < c1.points.size(); ++i) {
        CHECK(c1.points[i].x == c2.points[i].x);
        CHECK(c1.points[i].y == c2.points[i].y);
    }
    RngStream r3(100), r4(100);
    const auto t1 = triangle_sample(40, r3);
    const auto t2 = triangle_sample(40, r4);
    for (std::size_t i = 0; i < t1.points.size(); ++i)
        CHECK(t1.points[i] == t2.points[i]);
    RngStream r5(55), r6(55);
    const auto s1 = square_sample(40, r5);
    const auto s2 = square_sample(40, r6);
    for (std::size_t i = 0; i < s1.points.size(); ++i)
        CHECK(s1.points[i] == s2.points[i]);
}
