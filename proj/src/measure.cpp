#include "jsant/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jsant/symfun.hpp"

namespace jsant {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Complete homogeneous symmetric polynomial h_j of the given values.
double complete_homogeneous(const std::vector<double>& vals, int j) {
    std::vector<double> h(static_cast<std::size_t>(j) + 1, 0.0);
    h[0] = 1.0;
    for (double c : vals)
        for (int t = 1; t <= j; ++t) h[static_cast<std::size_t>(t)] += c * h[static_cast<std::size_t>(t) - 1];
    return h[static_cast<std::size_t>(j)];
}

// int over a simplex of x_m^j: vol * n! j! / (n+j)! * h_j(vertex m-coords).
double simplex_monomial_integral(const std::vector<Vec>& verts, int m, int j) {
    const int n = static_cast<int>(verts[0].size());
    double vol = simplex_volume(verts);
    if (vol == 0.0 || j == 0) return vol;
    std::vector<double> coords;
    for (const Vec& v : verts) coords.push_back(v[static_cast<std::size_t>(m)]);
    double factor = 1.0;
    for (int i = n + 1; i <= n + j; ++i) factor /= i;  // n!/(n+j)!
    for (int i = 2; i <= j; ++i) factor *= i;          // j!
    return vol * factor * complete_homogeneous(coords, j);
}

// Facet cones from the origin (interior by symmetry).
std::vector<std::vector<Vec>> cone_simplices(const SymmetricPolytope& P) {
    if (P.degenerate) throw std::domain_error("cone_simplices: degenerate polytope");
    std::vector<std::vector<Vec>> out;
    Vec origin(static_cast<std::size_t>(P.n), 0.0);
    for (const auto& ids : P.facet_vertices) {
        std::vector<Vec> s{origin};
        for (int id : ids) s.push_back(P.vertices[static_cast<std::size_t>(id)]);
        out.push_back(std::move(s));
    }
    return out;
}

struct McAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
    double stderr_of_mean() const {
        if (count < 2) return 0.0;
        double n = static_cast<double>(count);
        double var = std::max(0.0, sum_sq / n - (sum / n) * (sum / n));
        return std::sqrt(var / n);
    }
};

// Hit-or-miss over the box [-R, R]^n with an integrand weight per hit.
template <typename Member, typename Weight>
VolumeResult box_mc(int n, double R, const McConfig& cfg, Member member, Weight weight) {
    if (cfg.samples < 1000) throw std::invalid_argument("McConfig: samples >= 1e3 required");
    const std::uint64_t batch = std::max<std::uint64_t>(1, cfg.batch);
    const double box_vol = std::pow(2.0 * R, n);
    McAccumulator acc;
    Vec x(static_cast<std::size_t>(n));
    std::uint64_t done = 0, batch_idx = 0;
    while (done < cfg.samples) {
        std::uint64_t chunk = std::min<std::uint64_t>(batch, cfg.samples - done);
        CounterRng rng(cfg.seed, batch_idx);
        for (std::uint64_t i = 0; i < chunk; ++i) {
            for (double& c : x) c = rng.uniform(-R, R);
            acc.add(member(x) ? weight(x) : 0.0);
        }
        done += chunk;
        ++batch_idx;
    }
    VolumeResult r;
    r.method = VolumeMethod::MonteCarlo;
    r.value = box_vol * acc.mean();
    r.stderr_ = box_vol * acc.stderr_of_mean();
    return r;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t mix = seed;
    std::uint64_t a = splitmix64(mix);
    mix ^= 0x632be59bd9b4e019ull * (stream + 1);
    state_ = a ^ splitmix64(mix);
}

std::uint64_t CounterRng::next_u64() { return splitmix64(state_); }

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double CounterRng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

VolumeResult volume_polytope(const SymmetricPolytope& P) {
    if (P.degenerate) throw std::domain_error("volume_polytope: degenerate polytope");
    double total = 0.0;
    for (const auto& s : cone_simplices(P)) total += simplex_volume(s);
    return {total, 0.0, VolumeMethod::Exact};
}

VolumeResult volume_mc(const BodyOracle& K, const McConfig& cfg) {
    return box_mc(K.n, K.outer_radius, cfg, K.member, [](const Vec&) { return 1.0; });
}

VolumeResult volume_mc(const SymmetricPolytope& P, const McConfig& cfg) {
    double R = 0.0;
    for (const Vec& v : P.vertices) R = std::max(R, norm2(v));
    return box_mc(P.n, R, cfg, [&](const Vec& x) { return P.contains(x); },
                  [](const Vec&) { return 1.0; });
}

VolumeResult volume(const Body& b, const McConfig& cfg) {
    if (const auto* P = std::get_if<SymmetricPolytope>(&b)) return volume_polytope(*P);
    return volume_mc(std::get<BodyOracle>(b), cfg);
}

double lp_ball_volume(int n, double p) {
    if (n < 1 || p <= 0.0) throw std::invalid_argument("lp_ball_volume: n >= 1, p > 0");
    double log_vol = n * std::log(2.0) + n * std::lgamma(1.0 + 1.0 / p) - std::lgamma(1.0 + n / p);
    return std::exp(log_vol);
}

double lp_ball_moment(int n, double p, double q) {
    if (n < 1 || p <= 0.0 || q <= -1.0)
        throw std::invalid_argument("lp_ball_moment: n >= 1, p > 0, q > -1");
    // Dirichlet: 2^n p^-n Gamma((q+1)/p) Gamma(1/p)^{n-1} / Gamma(1 + (n+q)/p).
    double log_m = n * std::log(2.0) - n * std::log(p) + std::lgamma((q + 1.0) / p) +
                   (n - 1.0) * std::lgamma(1.0 / p) - std::lgamma(1.0 + (n + q) / p);
    return std::exp(log_m);
}

std::vector<std::vector<Vec>> clip_simplex(const std::vector<Vec>& simplex, const Vec& a, double b) {
    std::vector<const Vec*> inside, outside;
    for (const Vec& v : simplex) (dot(a, v) <= b + 1e-12 ? inside : outside).push_back(&v);
    if (outside.empty()) return {simplex};
    if (inside.empty()) return {};

    std::vector<Vec> region;
    for (const Vec* v : inside) region.push_back(*v);
    for (const Vec* vi : inside) {
        double di = b - dot(a, *vi);
        for (const Vec* vo : outside) {
            double doo = dot(a, *vo) - b;
            double t = di / (di + doo);  // crossing parameter along the edge
            region.push_back(*vi + t * (*vo - *vi));
        }
    }
    Hull h = convex_hull(region);
    if (!h.full_dimensional) return {};
    std::vector<std::vector<Vec>> pieces;
    for (const auto& ids : hull_fan_triangulation(h)) {
        std::vector<Vec> s;
        for (int id : ids) s.push_back(region[static_cast<std::size_t>(id)]);
        pieces.push_back(std::move(s));
    }
    return pieces;
}

VolumeResult moment_integral(const SymmetricPolytope& P, int m, int j) {
    if (P.degenerate) throw std::domain_error("moment_integral: degenerate polytope");
    if (m < 0 || m >= P.n) throw std::invalid_argument("moment_integral: axis out of range");
    if (j < 0) throw std::invalid_argument("moment_integral: j >= 0 required");
    // By symmetry int |x_m|^j = 2 int_{x_m >= 0} x_m^j; clip each cone piece.
    Vec a(static_cast<std::size_t>(P.n), 0.0);
    a[static_cast<std::size_t>(m)] = -1.0;  // keep x_m >= 0
    double total = 0.0;
    for (const auto& s : cone_simplices(P))
        for (const auto& piece : clip_simplex(s, a, 0.0))
            total += simplex_monomial_integral(piece, m, j);
    return {2.0 * total, 0.0, VolumeMethod::Exact};
}

VolumeResult moment_integral(const BodyOracle& K, int m, int j, const McConfig& cfg) {
    return box_mc(K.n, K.outer_radius, cfg, K.member, [m, j](const Vec& x) {
        return std::pow(std::abs(x[static_cast<std::size_t>(m)]), j);
    });
}

VolumeResult moment_integral(const Body& b, int m, int j, const McConfig& cfg) {
    if (const auto* P = std::get_if<SymmetricPolytope>(&b)) return moment_integral(*P, m, j);
    return moment_integral(std::get<BodyOracle>(b), m, j, cfg);
}

std::vector<Vec> second_moment_matrix(const SymmetricPolytope& P) {
    const int n = P.n;
    std::vector<Vec> M(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (const auto& s : cone_simplices(P)) {
        double vol = simplex_volume(s);
        if (vol == 0.0) continue;
        // int_simplex x_a x_b = V / ((n+1)(n+2)) * (sum_i c_i^a c_i^b + sum c^a sum c^b).
        Vec col_sum(static_cast<std::size_t>(n), 0.0);
        for (const Vec& v : s) col_sum = col_sum + v;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double cross = 0.0;
                for (const Vec& v : s)
                    cross += v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
                M[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                    vol / ((n + 1.0) * (n + 2.0)) *
                    (cross + col_sum[static_cast<std::size_t>(a)] * col_sum[static_cast<std::size_t>(b)]);
            }
    }
    return M;
}

RatioResult santalo_ratio(const std::vector<Body>& bodies, int j, const McConfig& cfg) {
    if (bodies.empty()) throw std::invalid_argument("santalo_ratio: empty tuple");
    const int n = body_dim(bodies[0]);
    const int k = static_cast<int>(bodies.size());
    double product = 1.0;
    double rel_var = 0.0;
    std::uint64_t stream = 0;
    for (const Body& b : bodies) {
        McConfig local = cfg;
        local.seed = cfg.seed + 0x51ed2701u * (++stream);
        VolumeResult v = volume(b, local);
        product *= v.value;
        if (v.value > 0.0) rel_var += (v.stderr_ / v.value) * (v.stderr_ / v.value);
    }
    double denom = std::pow(lp_ball_volume(n, j), k);
    RatioResult r;
    r.value = product / denom;
    r.stderr_ = std::abs(r.value) * std::sqrt(rel_var);
    return r;
}

double bound_constant(int n, int j, int k) {
    if (j < 2 || j > k) throw std::invalid_argument("bound_constant: 2 <= j <= k required");
    return std::pow(binomial(k, j), static_cast<double>(n) * k / j);
}

}  // namespace jsant
