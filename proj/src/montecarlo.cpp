#include "tempcorr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tempcorr {
namespace mc {
namespace {

// Counter-based generator: every random quantity is a pure function of
// (seed, realization, purpose tag, counter), so results are bit-identical
// for any worker count and any evaluation order.
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct Stream {
    std::uint64_t key = 0;
    // Uniform on (0,1]; the closed right end keeps -log(u) finite-safe at 0.
    double uniform(std::uint64_t ctr) const {
        std::uint64_t bits = mix64(key + ctr * kGolden);
        return double((bits >> 11) + 1) * 0x1.0p-53;
    }
};

constexpr std::uint64_t kTagCount = 1;
constexpr std::uint64_t kTagRadius = 2;
constexpr std::uint64_t kTagMark = 3;
constexpr std::uint64_t kTagFade = 4;
constexpr std::uint64_t kTagLinkFade = 5;
constexpr std::uint64_t kTagLinkDist = 6;

Stream stream_for(std::uint64_t seed, std::uint64_t rid, std::uint64_t tag) {
    return Stream{mix64(mix64(mix64(seed) ^ rid) ^ tag)};
}

// Per-slot point process in the independent-interference mode.
std::uint64_t slot_tag(std::uint64_t tag, int slot) {
    return tag | (std::uint64_t(slot + 1) << 8);
}

// Mark/fade counter for point i in a given slot; points keep their original
// draw index even after radius filtering, so a filtered run shares every
// per-point decision with its unfiltered twin.
std::uint64_t point_ctr(int slot, std::uint64_t i) {
    return (std::uint64_t(slot) << 32) | i;
}

// Inverse-product Poisson draw, chunked so exp(-mean) stays in range.
std::int64_t poisson_knuth(const Stream& s, double mean) {
    if (!(mean > 0.0)) return 0;
    int chunks = int(mean / 30.0) + 1;
    double limit = std::exp(-mean / chunks);
    std::int64_t total = 0;
    std::uint64_t ctr = 0;
    for (int c = 0; c < chunks; ++c) {
        double prod = 1.0;
        std::int64_t draws = 0;
        do {
            prod *= s.uniform(ctr++);
            ++draws;
        } while (prod > limit);
        total += draws - 1;
    }
    return total;
}

double gain_from_d2(double d2, double half_alpha) {
    if (half_alpha == 2.0) return 1.0 / (d2 * d2);
    if (half_alpha == 1.5) return 1.0 / (d2 * std::sqrt(d2));
    if (half_alpha == 2.5) return 1.0 / (d2 * d2 * std::sqrt(d2));
    if (half_alpha == 3.0) return 1.0 / (d2 * d2 * d2);
    return std::pow(d2, -half_alpha);
}

// Smallest radius at which the mean interference arriving from beyond the
// window is below 1e-3 of the scale theta r^alpha the link cares about,
// floored at 20 link distances.
double auto_window(const NetworkParams& q, double r) {
    double floor_w = 20.0 * r;
    double lp = q.lambda * q.p;
    if (lp <= 0.0) return floor_w;
    double alpha = 2.0 / q.delta;
    double mass = 1e3 * M_PI * lp * (q.delta / (1.0 - q.delta)) * q.theta *
                  std::pow(r, alpha);
    return std::max(floor_w, std::pow(mass, 1.0 / (alpha - 2.0)));
}

struct Scratch {
    std::vector<double> gain;        // path gain of each retained point
    std::vector<std::uint64_t> idx;  // original draw index of that point
};

void draw_points(Scratch& s, const Stream& radius, std::int64_t count,
                 double window, double half_alpha, bool bounded,
                 double trunc) {
    s.gain.clear();
    s.idx.clear();
    const double w2 = window * window;
    const double t2 = trunc > 0.0 ? trunc * trunc : 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
        double d2 = w2 * radius.uniform(std::uint64_t(i));
        if (t2 > 0.0 && d2 > t2) continue;
        double g = gain_from_d2(d2, half_alpha);
        if (bounded && g > 1.0) g = 1.0;
        s.gain.push_back(g);
        s.idx.push_back(std::uint64_t(i));
    }
}

struct LinkDraw {
    double r = 0.0;
    double window = 0.0;
    double lgain = 0.0;
};

LinkDraw link_for(const SimConfig& cfg, std::uint64_t rid) {
    LinkDraw out;
    if (cfg.distance_mode == DistanceMode::rayleigh) {
        Stream dist = stream_for(cfg.seed, rid, kTagLinkDist);
        out.r = std::sqrt(-std::log(dist.uniform(0)) / (M_PI * cfg.mu));
    } else {
        out.r = cfg.params.r;
    }
    out.window = cfg.window_radius > 0.0 ? cfg.window_radius
                                         : auto_window(cfg.params, out.r);
    double g = std::pow(out.r, -cfg.params.alpha());
    if (cfg.bounded_path_loss && g > 1.0) g = 1.0;
    out.lgain = g;
    return out;
}

void fill_points(const SimConfig& cfg, std::uint64_t rid,
                 std::uint64_t cnt_tag, std::uint64_t rad_tag, double window,
                 Scratch& s) {
    Stream cnt = stream_for(cfg.seed, rid, cnt_tag);
    Stream rad = stream_for(cfg.seed, rid, rad_tag);
    double mean = cfg.params.lambda * M_PI * window * window;
    std::int64_t n = poisson_knuth(cnt, mean);
    draw_points(s, rad, n, window, 1.0 / cfg.params.delta,
                cfg.bounded_path_loss, cfg.truncation_radius);
}

double slot_interference(const SimConfig& cfg, std::uint64_t rid, int slot,
                         const Scratch& s) {
    Stream mark = stream_for(cfg.seed, rid, kTagMark);
    Stream fade = stream_for(cfg.seed, rid, kTagFade);
    const double p = cfg.params.p;
    double total = 0.0;
    for (std::size_t j = 0; j < s.gain.size(); ++j) {
        std::uint64_t c = point_ctr(slot, s.idx[j]);
        if (mark.uniform(c) <= p)
            total += -std::log(fade.uniform(c)) * s.gain[j];
    }
    return total;
}

std::uint64_t success_bits_impl(const SimConfig& cfg, std::uint64_t rid,
                                int n_slots, Scratch& s, int* n_points) {
    LinkDraw link = link_for(cfg, rid);
    Stream lfade = stream_for(cfg.seed, rid, kTagLinkFade);
    std::uint64_t bits = 0;
    if (!cfg.independent_interference) {
        fill_points(cfg, rid, kTagCount, kTagRadius, link.window, s);
        if (n_points) *n_points = int(s.gain.size());
    }
    for (int slot = 0; slot < n_slots; ++slot) {
        if (cfg.independent_interference) {
            fill_points(cfg, rid, slot_tag(kTagCount, slot),
                        slot_tag(kTagRadius, slot), link.window, s);
            if (n_points && slot == 0) *n_points = int(s.gain.size());
        }
        double interference = slot_interference(cfg, rid, slot, s);
        double h = -std::log(lfade.uniform(std::uint64_t(slot)));
        if (interference == 0.0 ||
            h * link.lgain >= cfg.params.theta * interference)
            bits |= std::uint64_t(1) << slot;
    }
    return bits;
}

void sir_pair(const SimConfig& cfg, std::uint64_t rid, Scratch& s,
              double sir[2]) {
    LinkDraw link = link_for(cfg, rid);
    Stream lfade = stream_for(cfg.seed, rid, kTagLinkFade);
    if (!cfg.independent_interference)
        fill_points(cfg, rid, kTagCount, kTagRadius, link.window, s);
    for (int slot = 0; slot < 2; ++slot) {
        if (cfg.independent_interference)
            fill_points(cfg, rid, slot_tag(kTagCount, slot),
                        slot_tag(kTagRadius, slot), link.window, s);
        double interference = slot_interference(cfg, rid, slot, s);
        double h = -std::log(lfade.uniform(std::uint64_t(slot)));
        sir[slot] = interference == 0.0
                        ? std::numeric_limits<double>::infinity()
                        : h * link.lgain / interference;
    }
}

int delay_of(const SimConfig& cfg, std::uint64_t rid, Scratch& s) {
    LinkDraw link = link_for(cfg, rid);
    Stream lfade = stream_for(cfg.seed, rid, kTagLinkFade);
    if (!cfg.independent_interference)
        fill_points(cfg, rid, kTagCount, kTagRadius, link.window, s);
    for (int slot = 0; slot < cfg.max_slots; ++slot) {
        if (cfg.independent_interference)
            fill_points(cfg, rid, slot_tag(kTagCount, slot),
                        slot_tag(kTagRadius, slot), link.window, s);
        double interference = slot_interference(cfg, rid, slot, s);
        double h = -std::log(lfade.uniform(std::uint64_t(slot)));
        if (interference == 0.0 ||
            h * link.lgain >= cfg.params.theta * interference)
            return slot + 1;
    }
    return cfg.max_slots + 1;
}

struct Tally {
    std::int64_t m = 0;
    std::vector<std::int64_t> a;
    explicit Tally(std::size_t k) : a(k, 0) {}
};

template <class Fn>
std::vector<Tally> run_batches(const SimConfig& cfg, std::size_t k, Fn&& fn) {
    const std::int64_t n = cfg.n_realizations;
    const int b_count =
        int(std::max<std::int64_t>(1, std::min<std::int64_t>(200, n / 50)));
    std::vector<Tally> tallies;
    tallies.resize(std::size_t(b_count), Tally(k));
    std::atomic<int> next{0};
    int workers = cfg.n_workers > 0 ? cfg.n_workers
                                    : int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, b_count);
    auto work = [&]() {
        Scratch scratch;
        for (;;) {
            int b = next.fetch_add(1);
            if (b >= b_count) break;
            std::int64_t lo = n * b / b_count;
            std::int64_t hi = n * (b + 1) / b_count;
            Tally& t = tallies[std::size_t(b)];
            for (std::int64_t rid = lo; rid < hi; ++rid) {
                fn(std::uint64_t(rid), scratch, t);
                ++t.m;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return tallies;
}

template <class Get>
SimEstimate reduce_stat(const std::vector<Tally>& tallies, Get&& get) {
    std::int64_t m_total = 0;
    std::int64_t a_total = 0;
    for (const auto& t : tallies) {
        m_total += t.m;
        a_total += get(t);
    }
    SimEstimate e;
    e.n_effective = m_total;
    if (m_total == 0) return e;
    e.mean = double(a_total) / double(m_total);
    double var = 0.0;
    int used = 0;
    for (const auto& t : tallies) {
        if (t.m == 0) continue;
        ++used;
        double w = double(t.m) / double(m_total);
        double x = double(get(t)) / double(t.m);
        var += w * w * (x - e.mean) * (x - e.mean);
    }
    if (used > 1) var *= double(used) / double(used - 1);
    e.std_error = std::sqrt(var);
    e.ci_lo = e.mean - 1.96 * e.std_error;
    e.ci_hi = e.mean + 1.96 * e.std_error;
    return e;
}

SimEstimate reduce_index(const std::vector<Tally>& tallies, std::size_t j) {
    return reduce_stat(tallies, [j](const Tally& t) { return t.a[j]; });
}

}  // namespace

void SimConfig::validate(Estimator estimator) const {
    params.validate();
    if (n_realizations < 1 || n_realizations > 2000000000LL)
        throw std::domain_error("sim: n_realizations out of range");
    if (n_slots < 1 || n_slots > 64)
        throw std::domain_error("sim: n_slots must lie in [1, 64]");
    if (!std::isfinite(window_radius) || window_radius < 0.0)
        throw std::domain_error("sim: window_radius must be >= 0");
    if (!std::isfinite(truncation_radius) || truncation_radius < 0.0)
        throw std::domain_error("sim: truncation_radius must be >= 0");
    if (truncation_radius > 0.0 && truncation_radius > effective_window())
        throw std::domain_error(
            "sim: truncation_radius exceeds the simulation window");
    if (distance_mode == DistanceMode::rayleigh &&
        (!std::isfinite(mu) || mu <= 0.0))
        throw std::domain_error("sim: mu must be positive");
    if (estimator == Estimator::local_delay &&
        (max_slots < 1 || max_slots > 5000))
        throw std::domain_error("sim: max_slots must lie in [1, 5000]");
    if (n_workers < 0 || n_workers > 256)
        throw std::domain_error("sim: n_workers must lie in [0, 256]");
    if (distance_mode == DistanceMode::fixed) {
        double w = effective_window();
        if (params.lambda * M_PI * w * w > 5e7)
            throw std::domain_error(
                "sim: window implies too many points per realization");
    }
}

double SimConfig::effective_window() const {
    if (window_radius > 0.0) return window_radius;
    return auto_window(params, params.r);
}

JointRunResult run_joint(const SimConfig& config) {
    SimConfig cfg = config;
    cfg.validate(Estimator::joint_success);
    const int n = cfg.n_slots;
    auto tallies = run_batches(
        cfg, std::size_t(2 * n),
        [&](std::uint64_t rid, Scratch& s, Tally& t) {
            std::uint64_t bits = success_bits_impl(cfg, rid, n, s, nullptr);
            std::uint64_t mask = 0;
            for (int j = 0; j < n; ++j) {
                mask |= std::uint64_t(1) << j;
                if ((bits & mask) == mask) ++t.a[std::size_t(j)];
                if ((bits & mask) != 0) ++t.a[std::size_t(n + j)];
            }
        });
    JointRunResult out;
    for (int j = 0; j < n; ++j)
        out.joint_success.push_back(reduce_index(tallies, std::size_t(j)));
    for (int j = 0; j < n; ++j)
        out.at_least_once.push_back(reduce_index(tallies, std::size_t(n + j)));
    return out;
}

SimEstimate run(const SimConfig& config, Estimator estimator) {
    switch (estimator) {
        case Estimator::joint_success:
        case Estimator::at_least_once: {
            JointRunResult r = run_joint(config);
            return estimator == Estimator::joint_success
                       ? r.joint_success.back()
                       : r.at_least_once.back();
        }
        case Estimator::correlation:
            return run_correlation(config);
        case Estimator::joint_cdf:
            throw std::domain_error(
                "sim: joint_cdf needs run_joint_cdf with threshold pairs");
        case Estimator::local_delay:
            throw std::domain_error(
                "sim: local_delay needs local_delay_samples");
    }
    throw std::logic_error("sim: unknown estimator");
}

std::vector<SimEstimate> run_joint_cdf(
    const SimConfig& config,
    const std::vector<std::pair<double, double>>& theta_pairs) {
    if (theta_pairs.empty())
        throw std::domain_error("sim: joint_cdf needs at least one pair");
    SimConfig cfg = config;
    cfg.n_slots = 2;
    // the window must cover the most demanding threshold in the grid
    double tmax = cfg.params.theta;
    for (const auto& pr : theta_pairs) {
        if (!(pr.first > 0.0) || !(pr.second > 0.0))
            throw std::domain_error("sim: thresholds must be positive");
        tmax = std::max({tmax, pr.first, pr.second});
    }
    cfg.params.theta = tmax;
    cfg.validate(Estimator::joint_cdf);
    auto tallies = run_batches(
        cfg, theta_pairs.size(),
        [&](std::uint64_t rid, Scratch& s, Tally& t) {
            double sir[2];
            sir_pair(cfg, rid, s, sir);
            for (std::size_t q = 0; q < theta_pairs.size(); ++q)
                if (sir[0] > theta_pairs[q].first &&
                    sir[1] > theta_pairs[q].second)
                    ++t.a[q];
        });
    std::vector<SimEstimate> out;
    out.reserve(theta_pairs.size());
    for (std::size_t q = 0; q < theta_pairs.size(); ++q)
        out.push_back(reduce_index(tallies, q));
    return out;
}

SimEstimate run_correlation(const SimConfig& config) {
    SimConfig cfg = config;
    cfg.n_slots = 2;
    cfg.validate(Estimator::correlation);
    auto tallies =
        run_batches(cfg, 3, [&](std::uint64_t rid, Scratch& s, Tally& t) {
            std::uint64_t bits = success_bits_impl(cfg, rid, 2, s, nullptr);
            std::int64_t x = std::int64_t(bits & 1);
            std::int64_t y = std::int64_t((bits >> 1) & 1);
            t.a[0] += x;
            t.a[1] += y;
            t.a[2] += x & y;
        });
    std::int64_t m_total = 0, sx = 0, sy = 0, sxy = 0;
    for (const auto& t : tallies) {
        m_total += t.m;
        sx += t.a[0];
        sy += t.a[1];
        sxy += t.a[2];
    }
    SimEstimate e;
    e.n_effective = m_total;
    if (m_total == 0) return e;
    double mx = double(sx) / double(m_total);
    double my = double(sy) / double(m_total);
    double mxy = double(sxy) / double(m_total);
    double den = std::sqrt(mx * (1.0 - mx) * my * (1.0 - my));
    e.mean = den > 0.0 ? (mxy - mx * my) / den : 0.0;
    // error bar from the spread of per-batch correlations; batches with a
    // degenerate margin carry no information about the ratio and are skipped
    std::vector<std::pair<double, double>> batch_rho;  // (weight m, rho)
    std::int64_t m_used = 0;
    for (const auto& t : tallies) {
        if (t.m == 0) continue;
        double bx = double(t.a[0]) / double(t.m);
        double by = double(t.a[1]) / double(t.m);
        double bxy = double(t.a[2]) / double(t.m);
        double bden = std::sqrt(bx * (1.0 - bx) * by * (1.0 - by));
        if (!(bden > 0.0)) continue;
        batch_rho.emplace_back(double(t.m), (bxy - bx * by) / bden);
        m_used += t.m;
    }
    if (batch_rho.size() > 1) {
        double var = 0.0;
        for (const auto& [m_b, rho_b] : batch_rho) {
            double w = m_b / double(m_used);
            var += w * w * (rho_b - e.mean) * (rho_b - e.mean);
        }
        var *= double(batch_rho.size()) / double(batch_rho.size() - 1);
        e.std_error = std::sqrt(var);
    }
    e.ci_lo = e.mean - 1.96 * e.std_error;
    e.ci_hi = e.mean + 1.96 * e.std_error;
    return e;
}

DelayTailResult local_delay_samples(const SimConfig& config) {
    SimConfig cfg = config;
    cfg.validate(Estimator::local_delay);
    const int m = cfg.max_slots;
    auto tallies = run_batches(cfg, std::size_t(m + 1),
                               [&](std::uint64_t rid, Scratch& s, Tally& t) {
                                   int d = delay_of(cfg, rid, s);
                                   ++t.a[std::size_t(d - 1)];
                               });
    DelayTailResult out;
    out.tail.reserve(std::size_t(m + 1));
    for (int n = 0; n <= m; ++n) {
        out.tail.push_back(reduce_stat(tallies, [&](const Tally& t) {
            std::int64_t c = 0;
            for (int d = n; d <= m; ++d) c += t.a[std::size_t(d)];
            return c;
        }));
        out.censored_mean += out.tail.back().mean;
    }
    out.mean_estimate = reduce_stat(tallies, [&](const Tally& t) {
        std::int64_t c = 0;
        for (int d = 0; d <= m; ++d) c += std::int64_t(d + 1) * t.a[std::size_t(d)];
        return c;
    });
    return out;
}

SimConfig independent_interference_toggle(SimConfig config) {
    config.independent_interference = true;
    return config;
}

std::vector<double> sample_interference(const SimConfig& config,
                                        std::int64_t n_samples) {
    SimConfig cfg = config;
    cfg.validate(Estimator::joint_success);
    if (n_samples < 1 || n_samples > 100000000LL)
        throw std::domain_error("sim: n_samples out of range");
    std::vector<double> out;
    out.reserve(std::size_t(n_samples));
    Scratch s;
    for (std::int64_t rid = 0; rid < n_samples; ++rid) {
        LinkDraw link = link_for(cfg, std::uint64_t(rid));
        fill_points(cfg, std::uint64_t(rid), kTagCount, kTagRadius,
                    link.window, s);
        out.push_back(slot_interference(cfg, std::uint64_t(rid), 0, s));
    }
    return out;
}

std::vector<RawRecord> collect_raw_records(const SimConfig& config,
                                           std::int64_t n_records) {
    SimConfig cfg = config;
    cfg.validate(Estimator::joint_success);
    if (n_records < 1 || n_records > 10000000LL)
        throw std::domain_error("sim: n_records out of range");
    std::vector<RawRecord> out;
    out.reserve(std::size_t(n_records));
    Scratch s;
    for (std::int64_t rid = 0; rid < n_records; ++rid) {
        RawRecord rec;
        rec.realization_id = rid;
        int npts = 0;
        rec.success_bits =
            success_bits_impl(cfg, std::uint64_t(rid), cfg.n_slots, s, &npts);
        rec.n_points = npts;
        rec.delay = std::int32_t(delay_of(cfg, std::uint64_t(rid), s));
        out.push_back(rec);
    }
    return out;
}

void write_raw_csv(const std::string& path,
                   const std::vector<RawRecord>& records) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << "realization_id,n_points,success_bits,delay\n";
    for (const auto& r : records)
        f << r.realization_id << "," << r.n_points << "," << r.success_bits
          << "," << r.delay << "\n";
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {
constexpr char kRawMagic[8] = {'T', 'C', 'R', 'A', 'W', '0', '0', '1'};
}

void write_raw_binary(const std::string& path,
                      const std::vector<RawRecord>& records) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(kRawMagic, 8);
    std::uint64_t n = records.size();
    f.write(reinterpret_cast<const char*>(&n), 8);
    for (const auto& r : records) {
        f.write(reinterpret_cast<const char*>(&r.realization_id), 8);
        f.write(reinterpret_cast<const char*>(&r.n_points), 4);
        f.write(reinterpret_cast<const char*>(&r.success_bits), 8);
        f.write(reinterpret_cast<const char*>(&r.delay), 4);
    }
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<RawRecord> read_raw_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, kRawMagic, 8) != 0)
        throw std::runtime_error("'" + path + "' is not a raw record file");
    std::uint64_t n = 0;
    f.read(reinterpret_cast<char*>(&n), 8);
    if (!f || n > 100000000ull)
        throw std::runtime_error("'" + path + "': bad record count");
    std::vector<RawRecord> out;
    out.reserve(std::size_t(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        RawRecord r;
        f.read(reinterpret_cast<char*>(&r.realization_id), 8);
        f.read(reinterpret_cast<char*>(&r.n_points), 4);
        f.read(reinterpret_cast<char*>(&r.success_bits), 8);
        f.read(reinterpret_cast<char*>(&r.delay), 4);
        if (!f) throw std::runtime_error("'" + path + "': truncated file");
        out.push_back(r);
    }
    return out;
}

}  // namespace mc
}  // namespace tempcorr
