#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tempcorr/local_delay.hpp"
#include "tempcorr/network.hpp"

namespace tempcorr {
namespace mc {

enum class Estimator {
    joint_success,
    at_least_once,
    joint_cdf,
    local_delay,
    correlation,
};

struct SimConfig {
    NetworkParams params;
    int n_slots = 2;
    std::int64_t n_realizations = 10000;
    double window_radius = 0.0;  // 0 = choose automatically
    std::uint64_t seed = 1;
    bool bounded_path_loss = false;
    bool independent_interference = false;
    DistanceMode distance_mode = DistanceMode::fixed;
    double mu = 1.0;          // rayleigh distance mode
    int max_slots = 200;      // local-delay censoring horizon
    double truncation_radius = 0.0;  // optional post-filter; 0 = off
    int n_workers = 0;        // 0 = hardware concurrency

    void validate(Estimator estimator) const;
    // Radius actually used: max(20 r, the radius at which the mean
    // interference arriving from outside the disk falls below 1e-3 of the
    // in-window mean). Out-of-window mean is lambda p pi delta/(1-delta)
    // R^{2-alpha} r^alpha theta-scaled; see README for the bias bound.
    double effective_window() const;
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_effective = 0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

// Core estimator entry point for scalar quantities (joint_success or
// at_least_once over the first n_slots slots).
SimEstimate run(const SimConfig& config, Estimator estimator);

// One pass, all prefix estimators: joint_success[k] estimates success in all
// of slots 1..k+1; at_least_once[k] estimates success in at least one.
struct JointRunResult {
    std::vector<SimEstimate> joint_success;
    std::vector<SimEstimate> at_least_once;
};
JointRunResult run_joint(const SimConfig& config);

// P(SIR_1 > theta1, SIR_2 > theta2) for each pair, sharing one stream of
// realizations (common random numbers) across the grid.
std::vector<SimEstimate> run_joint_cdf(
    const SimConfig& config,
    const std::vector<std::pair<double, double>>& theta_pairs);

// Empirical survival curve of the local delay. tail[n] estimates P(M > n)
// for n = 0..max_slots; runs still failing at max_slots are right-censored
// there, so the mean estimates are lower bounds on E M.
struct DelayTailResult {
    std::vector<SimEstimate> tail;
    double censored_mean = 0.0;     // sum of the tail means
    SimEstimate mean_estimate;      // batch-means error bar for the same sum
};
DelayTailResult local_delay_samples(const SimConfig& config);

// Sample correlation of the success indicators of two consecutive slots.
SimEstimate run_correlation(const SimConfig& config);

// Copy of config with the interferer locations redrawn every slot.
SimConfig independent_interference_toggle(SimConfig config);

// Interference power at the origin for single realizations; used for tail
// diagnostics.
std::vector<double> sample_interference(const SimConfig& config,
                                        std::int64_t n_samples);

struct RawRecord {
    std::int64_t realization_id = 0;
    std::int32_t n_points = 0;
    std::uint64_t success_bits = 0;
    std::int32_t delay = -1;  // -1 when not a delay run
};
std::vector<RawRecord> collect_raw_records(const SimConfig& config,
                                           std::int64_t n_records);
void write_raw_csv(const std::string& path,
                   const std::vector<RawRecord>& records);
void write_raw_binary(const std::string& path,
                      const std::vector<RawRecord>& records);
std::vector<RawRecord> read_raw_binary(const std::string& path);

}  // namespace mc
}  // namespace tempcorr
