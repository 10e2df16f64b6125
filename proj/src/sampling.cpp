#include "convexlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace convexlab {

bool in_n_kappa(std::span<const int> s, int n) {
    long long total = 0;
    const std::size_t k = s.size();
    if (k < 3) return false;
    for (std::size_t j = 0; j < k; ++j) {
        if (s[j] < 0) return false;
        total += s[j];
        if (s[j] == 0 && s[(j + 1) % k] == 0) return false;
    }
    return total == n;
}

Vec2 uniform_in_polygon(const RegularPolygon& poly, RngStream& rng) {
    // fan triangulation from vertex 0, triangle picked by area
    const int k = poly.kappa;
    if (k == 3) {
        const double a = rng.uniform01();
        const double b = rng.uniform01();
        const double sa = std::sqrt(a);
        return (1.0 - sa) * poly.vertices[0] + sa * (1.0 - b) * poly.vertices[1] +
               sa * b * poly.vertices[2];
    }
    // triangles (v0, v_j, v_{j+1}) all have equal area in a regular polygon?
    // they do not; accumulate the fan areas once per call (kappa is tiny).
    double total = 0.0;
    std::vector<double> acc(static_cast<std::size_t>(k - 2));
    for (int j = 1; j + 1 < k; ++j) {
        const double area = 0.5 * std::fabs(cross(poly.vertices[static_cast<std::size_t>(j)] - poly.vertices[0],
                                                  poly.vertices[static_cast<std::size_t>(j + 1)] - poly.vertices[0]));
        total += area;
        acc[static_cast<std::size_t>(j - 1)] = total;
    }
    const double pick = rng.uniform(0.0, total);
    int j = 1;
    while (j + 2 < k && pick > acc[static_cast<std::size_t>(j - 1)]) ++j;
    const Vec2 a = poly.vertices[0];
    const Vec2 b = poly.vertices[static_cast<std::size_t>(j)];
    const Vec2 c = poly.vertices[static_cast<std::size_t>(j + 1)];
    const double u = rng.uniform01();
    const double v = rng.uniform01();
    const double su = std::sqrt(u);
    return (1.0 - su) * a + su * (1.0 - v) * b + su * v * c;
}

bool is_convex_position(std::span<const Vec2> points) {
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("is_convex_position: need at least 3 points");
    std::vector<Vec2> p(points.begin(), points.end());
    std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    for (std::size_t i = 1; i < n; ++i)
        if (p[i] == p[i - 1])
            throw std::invalid_argument("is_convex_position: duplicate points");

    double scale2 = 0.0;
    for (const Vec2& q : p) scale2 = std::max(scale2, norm2(q - p[0]));
    const double tol = 1e-12 * scale2;

    // monotone chain with strict turns; a popped point is not a hull vertex
    const auto build = [&](double orient) {
        std::vector<Vec2> h;
        for (const Vec2& q : p) {
            while (h.size() >= 2 &&
                   orient * cross(h[h.size() - 1] - h[h.size() - 2],
                                  q - h[h.size() - 2]) <= tol)
                h.pop_back();
            h.push_back(q);
        }
        return h.size();
    };
    const std::size_t lower = build(1.0);
    const std::size_t upper = build(-1.0);
    return lower + upper == n + 2;
}

std::vector<Vec2> canonical_order(std::vector<Vec2> points) {
    if (!is_convex_position(points))
        throw std::domain_error("canonical_order: points not in convex position");
    Vec2 center{0.0, 0.0};
    for (const Vec2& p : points) center += p;
    center = (1.0 / static_cast<double>(points.size())) * center;
    std::sort(points.begin(), points.end(), [&](Vec2 a, Vec2 b) {
        const double aa = std::atan2(a.y - center.y, a.x - center.x);
        const double ab = std::atan2(b.y - center.y, b.x - center.x);
        return aa < ab;
    });
    std::size_t start = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].y < points[start].y ||
            (points[i].y == points[start].y && points[i].x < points[start].x))
            start = i;
    }
    std::rotate(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(start),
                points.end());
    return points;
}

RejectionResult rejection_sample(const RegularPolygon& poly, int n, RngStream& rng,
                                 long long max_trials) {
    if (n < 3) throw std::invalid_argument("rejection_sample: n must be >= 3");
    std::vector<Vec2> pts(static_cast<std::size_t>(n));
    for (long long trial = 1; trial <= max_trials; ++trial) {
        for (auto& p : pts) p = uniform_in_polygon(poly, rng);
        if (is_convex_position(pts)) {
            RejectionResult res;
            res.config = ecp_of(poly, pts);
            res.trials = trial;
            return res;
        }
    }
    throw BudgetError("rejection_sample: trial budget exhausted");
}

std::vector<double> sample_ell(const RegularPolygon& poly, int n, RngStream& rng) {
    if (n < poly.kappa) throw std::invalid_argument("sample_ell: n must be >= kappa");
    const int k = poly.kappa;
    std::vector<double> ell(static_cast<std::size_t>(k));
    // sum c~_j + 2 sum ell_j = P bounds sum ell_j by P/2 on the feasible set
    const double cap = 0.5 * poly.p_const;
    for (;;) {
        const double s =
            cap * rng.beta(static_cast<double>(k + 1), static_cast<double>(2 * n - k));
        const std::vector<double> u = rng.sorted_uniforms(k, s);
        ell[0] = u[0];
        for (int j = 1; j < k; ++j)
            ell[static_cast<std::size_t>(j)] =
                u[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(j - 1)];
        if (in_feasible_region(poly, ell, /*strict=*/true)) return ell;
    }
}

std::vector<int> sample_sizes(const RegularPolygon& poly,
                              std::span<const double> c_tilde, int n, RngStream& rng,
                              long long max_trials) {
    const int k = poly.kappa;
    if (static_cast<int>(c_tilde.size()) != k)
        throw std::invalid_argument("sample_sizes: c_tilde must have kappa entries");
    for (double c : c_tilde)
        if (!(c > 0.0)) throw std::invalid_argument("sample_sizes: c_tilde must be positive");
    if (n < k) throw std::invalid_argument("sample_sizes: n must be >= kappa");

    BinomialCache cache;
    const std::vector<double> equal(static_cast<std::size_t>(k), 1.0);
    std::vector<int> s, target(static_cast<std::size_t>(k));
    const int n_parts = 2 * n - k;
    for (long long trial = 0; trial < max_trials; ++trial) {
        s = multinomial(rng, cache, n, equal);
        bool ok = true;
        for (int j = 0; j < k && ok; ++j) {
            target[static_cast<std::size_t>(j)] =
                s[static_cast<std::size_t>(j)] + s[static_cast<std::size_t>((j + 1) % k)] - 1;
            ok = target[static_cast<std::size_t>(j)] >= 0;
        }
        if (!ok) continue;
        // conditional multinomial draw for N, abandoned at the first mismatch
        int rem = n_parts;
        double wsum = 0.0;
        for (double c : c_tilde) wsum += c;
        for (int j = 0; j < k && ok; ++j) {
            int nj;
            if (j + 1 == k) {
                nj = rem;
            } else {
                nj = cache.sample(rng, rem, c_tilde[static_cast<std::size_t>(j)] / wsum);
                rem -= nj;
                wsum -= c_tilde[static_cast<std::size_t>(j)];
            }
            ok = (nj == target[static_cast<std::size_t>(j)]);
        }
        if (ok && in_n_kappa(s, n)) return s;
    }
    throw BudgetError("sample_sizes: trial budget exhausted");
}

namespace {

struct IncrementPair {
    double a = 0.0;  // projection on side j
    double b = 0.0;  // projection on side j+1
};

bool slope_less(const IncrementPair& p, const IncrementPair& q) {
    const double lhs = p.b * q.a;
    const double rhs = q.b * p.a;
    if (lhs != rhs) return lhs < rhs;
    return p.a < q.a;  // ties have probability zero but must order strictly
}

}  // namespace

ConvexConfig assemble_from_partitions(
    const RegularPolygon& poly, std::span<const double> ell, std::span<const int> s,
    const std::vector<std::vector<double>>& partitions) {
    const int k = poly.kappa;
    if (static_cast<int>(ell.size()) != k || static_cast<int>(s.size()) != k ||
        static_cast<int>(partitions.size()) != k)
        throw std::invalid_argument("assemble_from_partitions: size mismatch");
    int n = 0;
    for (int sj : s) n += sj;
    if (!in_n_kappa(s, n))
        throw std::domain_error("assemble_from_partitions: size vector not admissible");
    const auto ecp = side_lengths(poly, ell);
    if (!ecp) throw std::domain_error("assemble_from_partitions: infeasible distances");

    // increments of each side partition, endpoints 0 and c_j included
    std::vector<std::vector<double>> delta(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int nj = s[static_cast<std::size_t>(j)] +
                       s[static_cast<std::size_t>((j + 1) % k)] - 1;
        const auto& part = partitions[static_cast<std::size_t>(j)];
        if (static_cast<int>(part.size()) != nj)
            throw std::invalid_argument("assemble_from_partitions: bad partition size");
        const double c = ecp->side_len[static_cast<std::size_t>(j)];
        auto& d = delta[static_cast<std::size_t>(j)];
        d.resize(static_cast<std::size_t>(nj + 1));
        double prev = 0.0;
        for (int i = 0; i < nj; ++i) {
            const double cur = part[static_cast<std::size_t>(i)];
            if (!(cur >= prev) || cur > c)
                throw std::invalid_argument("assemble_from_partitions: partition not sorted");
            d[static_cast<std::size_t>(i)] = cur - prev;
            prev = cur;
        }
        d[static_cast<std::size_t>(nj)] = c - prev;
    }

    // contact point j sits s_j increments into side j, measured from the
    // corner shared with side j-1
    std::vector<Vec2> cp(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int sj = s[static_cast<std::size_t>(j)];
        const auto& part = partitions[static_cast<std::size_t>(j)];
        const int nj = static_cast<int>(part.size());
        double offset;
        if (sj == 0) offset = 0.0;
        else if (sj == nj + 1) offset = ecp->side_len[static_cast<std::size_t>(j)];
        else offset = part[static_cast<std::size_t>(sj - 1)];
        cp[static_cast<std::size_t>(j)] =
            ecp->corner[static_cast<std::size_t>(poly.wrap(j - 1))] +
            offset * poly.side_dir(j);
    }

    ConvexConfig cfg;
    cfg.kappa = k;
    cfg.n = n;
    cfg.ell.assign(ell.begin(), ell.end());
    cfg.ecp = *ecp;
    cfg.size_vector.assign(s.begin(), s.end());
    cfg.contact_index.assign(static_cast<std::size_t>(k), 0);
    cfg.points.reserve(static_cast<std::size_t>(n));
    cfg.points.push_back(cp[0]);
    cfg.contact_index[0] = 0;

    Vec2 cur = cp[0];
    int emitted = 1;
    for (int j = 0; j < k; ++j) {
        const int jn = poly.wrap(j + 1);
        const int m = s[static_cast<std::size_t>(jn)];  // chain cp_j -> cp_{j+1}
        if (m == 0) {
            cfg.contact_index[static_cast<std::size_t>(jn)] =
                cfg.contact_index[static_cast<std::size_t>(j)];
            continue;
        }
        std::vector<IncrementPair> vecs(static_cast<std::size_t>(m));
        const int sj = s[static_cast<std::size_t>(j)];
        for (int t = 0; t < m; ++t) {
            vecs[static_cast<std::size_t>(t)].a =
                delta[static_cast<std::size_t>(j)][static_cast<std::size_t>(sj + t)];
            vecs[static_cast<std::size_t>(t)].b =
                delta[static_cast<std::size_t>(jn)][static_cast<std::size_t>(t)];
        }
        std::sort(vecs.begin(), vecs.end(), slope_less);
        const Mat2 frame = corner_map_inverse(poly, j);
        for (int t = 0; t < m && emitted < n; ++t) {
            if (t + 1 == m && j + 1 < k) {
                cur = cp[static_cast<std::size_t>(jn)];  // snap over float drift
            } else {
                cur += frame.apply({vecs[static_cast<std::size_t>(t)].a,
                                    vecs[static_cast<std::size_t>(t)].b});
            }
            if (t + 1 == m)
                cfg.contact_index[static_cast<std::size_t>(jn)] = emitted;
            cfg.points.push_back(cur);
            ++emitted;
        }
    }
    return cfg;
}

ConvexConfig assemble_points(const RegularPolygon& poly, std::span<const double> ell,
                             std::span<const int> s, RngStream& rng) {
    const int k = poly.kappa;
    const auto ecp = side_lengths(poly, ell);
    if (!ecp) throw std::domain_error("assemble_points: infeasible distances");
    std::vector<std::vector<double>> partitions(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int nj = s[static_cast<std::size_t>(j)] +
                       s[static_cast<std::size_t>((j + 1) % k)] - 1;
        if (nj < 0) throw std::domain_error("assemble_points: size vector not admissible");
        partitions[static_cast<std::size_t>(j)] =
            rng.sorted_uniforms(nj, ecp->side_len[static_cast<std::size_t>(j)]);
    }
    return assemble_from_partitions(poly, ell, s, partitions);
}

ConvexConfig kappa_sample(const RegularPolygon& poly, int n, RngStream& rng) {
    if (n < poly.kappa) throw std::invalid_argument("kappa_sample: n must be >= kappa");
    const std::vector<double> ell = sample_ell(poly, n, rng);
    const auto ecp = side_lengths(poly, ell);
    std::vector<double> c_tilde(static_cast<std::size_t>(poly.kappa));
    for (int j = 0; j < poly.kappa; ++j)
        c_tilde[static_cast<std::size_t>(j)] =
            ecp->side_len[static_cast<std::size_t>(j)] / poly.m_const;
    const std::vector<int> s = sample_sizes(poly, c_tilde, n, rng);
    return assemble_points(poly, ell, s, rng);
}

ConvexConfig triangle_sample(int n, RngStream& rng) {
    if (n < 3) throw std::invalid_argument("triangle_sample: n must be >= 3");
    const RegularPolygon poly = make_polygon(3);

    // three Binomial(n-1, 1/2) conditioned on total n: i.i.d. fair bits, then
    // uniformly chosen flips toward the target total
    const int bits_n = 3 * n - 3;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(bits_n));
    int ones = 0;
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
        ones += b;
    }
    while (ones < n) {
        const auto idx = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(bits_n)));
        if (!bits[idx]) {
            bits[idx] = 1;
            ++ones;
        }
    }
    while (ones > n) {
        const auto idx = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(bits_n)));
        if (bits[idx]) {
            bits[idx] = 0;
            --ones;
        }
    }
    std::vector<int> s(3, 0);
    for (int i = 0; i < bits_n; ++i)
        s[static_cast<std::size_t>(i / (n - 1))] += bits[static_cast<std::size_t>(i)];

    // boundary distances from the first three increments of 2n order
    // statistics on [0, r]; the rest partitions the inner triangle's sides.
    // Increments here are in side-length units: ell = (sqrt3 / 2) * g.
    const std::vector<double> u = rng.sorted_uniforms(2 * n, poly.r);
    const std::vector<double> g = {u[0], u[1] - u[0], u[2] - u[1]};
    const double c = poly.r - (g[0] + g[1] + g[2]);
    std::vector<double> ell(3);
    for (int j = 0; j < 3; ++j)
        ell[static_cast<std::size_t>(j)] = 0.5 * std::sqrt(3.0) * g[static_cast<std::size_t>(j)];

    // uniform split of the remaining 2n-3 values into the three side partitions
    std::vector<int> label;
    label.reserve(static_cast<std::size_t>(2 * n - 3));
    for (int j = 0; j < 3; ++j) {
        const int nj = s[static_cast<std::size_t>(j)] + s[static_cast<std::size_t>((j + 1) % 3)] - 1;
        label.insert(label.end(), static_cast<std::size_t>(nj), j);
    }
    rng.shuffle(label);
    std::vector<std::vector<double>> partitions(3);
    for (std::size_t i = 3; i < u.size(); ++i) {
        double v = u[i] - u[2];
        if (v > c) v = c;  // guard float drift at the top end
        partitions[static_cast<std::size_t>(label[i - 3])].push_back(v);
    }
    return assemble_from_partitions(poly, ell, s, partitions);
}

namespace {

// increments of a sorted subset of `values` (and of its complement) on [0, c]
std::pair<std::vector<double>, std::vector<double>> split_increments(
    const std::vector<double>& values, const std::vector<std::uint8_t>& pick,
    double c) {
    std::vector<double> plus, minus;
    double prev_p = 0.0, prev_m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (pick[i]) {
            plus.push_back(values[i] - prev_p);
            prev_p = values[i];
        } else {
            minus.push_back(values[i] - prev_m);
            prev_m = values[i];
        }
    }
    plus.push_back(c - prev_p);
    minus.push_back(c - prev_m);
    return {std::move(plus), std::move(minus)};
}

}  // namespace

ConvexConfig square_sample(int n, RngStream& rng) {
    if (n < 3) throw std::invalid_argument("square_sample: n must be >= 3");
    const RegularPolygon poly = make_polygon(4);
    BinomialCache cache;

    // counts of rightward / upward edges, each with law
    // proportional to C(n-1,k) C(n-1,k-1), independent of each other
    const auto conditioned_pair = [&]() {
        for (;;) {
            const int x = cache.sample(rng, n - 1, 0.5);
            const int y = cache.sample(rng, n - 1, 0.5);
            if (x + y == n) return x;
        }
    };
    const int i_count = conditioned_pair();
    const int j_count = conditioned_pair();

    // batch A fixes the bottom/top distances and partitions the vertical
    // extent; batch B fixes right/left and partitions the horizontal extent
    const std::vector<double> a = rng.sorted_uniforms(n, 1.0);
    const std::vector<double> b = rng.sorted_uniforms(n, 1.0);
    const double ell_bottom = a[0];           // top distance is a[1] - a[0]
    const double ell_left = b[1] - b[0];      // right distance is b[0]
    const double c_v = 1.0 - a[1];
    const double c_h = 1.0 - b[1];
    std::vector<double> va(a.begin() + 2, a.end());
    std::vector<double> hb(b.begin() + 2, b.end());
    for (auto& v : va) v = std::min(v - a[1], c_v);
    for (auto& v : hb) v = std::min(v - b[1], c_h);

    // choose which order statistics bound the positive-increment runs
    const auto pick_mask = [&](int total, int chosen) {
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(total), 0);
        std::fill(mask.begin(), mask.begin() + chosen, 1);
        rng.shuffle(mask);
        return mask;
    };
    auto [h_plus, h_minus] = split_increments(hb, pick_mask(n - 2, i_count - 1), c_h);
    auto [v_plus, v_minus] = split_increments(va, pick_mask(n - 2, j_count - 1), c_v);
    for (auto& v : h_minus) v = -v;
    for (auto& v : v_minus) v = -v;

    std::vector<double> h(std::move(h_plus));
    h.insert(h.end(), h_minus.begin(), h_minus.end());
    std::vector<double> v(std::move(v_plus));
    v.insert(v.end(), v_minus.begin(), v_minus.end());
    rng.shuffle(v);  // uniform pairing permutation

    struct Edge {
        double angle;
        Vec2 d;
    };
    std::vector<Edge> edges(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const Vec2 d{h[static_cast<std::size_t>(t)], v[static_cast<std::size_t>(t)]};
        double ang = std::atan2(d.y, d.x);
        if (ang < 0.0) ang += 2.0 * std::numbers::pi;
        edges[static_cast<std::size_t>(t)] = {ang, d};
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& p, const Edge& q) {
        if (p.angle != q.angle) return p.angle < q.angle;
        return p.d.x > q.d.x;
    });

    std::vector<Vec2> pts(static_cast<std::size_t>(n));
    Vec2 cur{0.0, 0.0};
    Vec2 lo{0.0, 0.0};
    pts[0] = cur;
    for (int t = 0; t + 1 < n; ++t) {
        cur += edges[static_cast<std::size_t>(t)].d;
        pts[static_cast<std::size_t>(t + 1)] = cur;
        lo.x = std::min(lo.x, cur.x);
        lo.y = std::min(lo.y, cur.y);
    }
    const Vec2 shift{ell_left - lo.x, ell_bottom - lo.y};
    for (auto& p : pts) p += shift;

    return ecp_of(poly, std::move(pts));
}

ConvexConfig ecp_of(const RegularPolygon& poly, std::vector<Vec2> points) {
    const int k = poly.kappa;
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::invalid_argument("ecp_of: need at least 3 points");
    const double tol = 1e-9 * poly.r;
    for (const Vec2& p : points)
        if (!poly.contains(p, tol)) throw std::domain_error("ecp_of: point outside polygon");
    points = canonical_order(std::move(points));

    ConvexConfig cfg;
    cfg.kappa = k;
    cfg.n = n;
    cfg.ell.resize(static_cast<std::size_t>(k));
    cfg.contact_index.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& p : points) best = std::min(best, poly.side_distance(j, p));
        if (best < 0.0) best = 0.0;
        int pick = -1;
        for (int i = 0; i < n; ++i) {
            const Vec2 p = points[static_cast<std::size_t>(i)];
            if (poly.side_distance(j, p) > best + tol) continue;
            if (pick < 0) {
                pick = i;
                continue;
            }
            const Vec2 q = points[static_cast<std::size_t>(pick)];
            if (p.x < q.x || (p.x == q.x && p.y < q.y)) pick = i;
        }
        cfg.ell[static_cast<std::size_t>(j)] = best;
        cfg.contact_index[static_cast<std::size_t>(j)] = pick;
    }
    const auto ecp = side_lengths(poly, cfg.ell);
    if (!ecp) throw std::domain_error("ecp_of: inconsistent distances");
    cfg.ecp = *ecp;
    cfg.size_vector.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int prev = cfg.contact_index[static_cast<std::size_t>(poly.wrap(j - 1))];
        const int curr = cfg.contact_index[static_cast<std::size_t>(j)];
        cfg.size_vector[static_cast<std::size_t>(j)] = ((curr - prev) % n + n) % n;
    }
    cfg.points = std::move(points);
    return cfg;
}

double contact_offset_fraction(const RegularPolygon& poly, const ConvexConfig& cfg,
                               int j) {
    j = poly.wrap(j);
    const double c = cfg.ecp.side_len[static_cast<std::size_t>(j)];
    if (c <= 0.0) throw std::domain_error("contact_offset_fraction: empty side");
    const Vec2 base = cfg.ecp.corner[static_cast<std::size_t>(poly.wrap(j - 1))];
    const Vec2 cp = cfg.points[static_cast<std::size_t>(
        cfg.contact_index[static_cast<std::size_t>(j)])];
    return dot(cp - base, poly.side_dir(j)) / c;
}

}  // namespace convexlab
