// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_SCENARIO_HPP
#define CFMIMO_SCENARIO_HPP

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "cfmimo/constellation.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

/// Network dimensions. T = T_p + T_d is the coherence block length.
struct SystemDims {
    int L = 16;   // access points
    int N = 1;    // antennas per AP
    int K = 8;    // user equipments
    int T_p = 4;  // pilot slots
    int T_d = 30; // data slots

    int T() const { return T_p + T_d; }

    // Throws std::invalid_argument on non-positive entries. When
    // `expect_contamination` is set, additionally requires T_p < K.
    void validate(bool expect_contamination = false) const;
};

struct Geometry {
    std::vector<Eigen::Vector3d> ap_positions;  // meters, z = mast height
    std::vector<Eigen::Vector3d> ue_positions;  // meters, ground (z = 0)
    double area_width = 400.0;
    double area_height = 400.0;
};

/// Per-link second-order channel statistics. Xi(l,k) is the N x N correlation
/// matrix of h_{l,k}; xi(l,k) = trace(Xi(l,k)) / N is the large-scale fading
/// coefficient (linear power gain).
struct ChannelStats {
    std::vector<Eigen::MatrixXcd> Xi;  // L*K entries, row-major in (l,k)
    Eigen::MatrixXd xi;                // L x K

    int L() const { return static_cast<int>(xi.rows()); }
    int K() const { return static_cast<int>(xi.cols()); }
    const Eigen::MatrixXcd& corr(int l, int k) const { return Xi[static_cast<std::size_t>(l) * xi.cols() + k]; }
    Eigen::MatrixXcd& corr(int l, int k) { return Xi[static_cast<std::size_t>(l) * xi.cols() + k]; }

    void validate() const;  // Hermitian PSD Xi, xi = tr(Xi)/N, xi > 0
};

// Urban-microcell large-scale model constants. Exposed in config so they can
// be corrected against the reference parameterization without a rebuild.
struct PathlossModel {
    double const_db = -30.5;          // pathloss at 1 m
    double slope_db = 36.7;           // decay per decade of distance
    double shadow_std_db = 4.0;       // lognormal shadow fading std
    double decorrelation_m = 9.0;     // UE-separation shadowing decorrelation distance
    double ap_shadow_correlation = 0.0;  // cross-AP shadowing correlation in [0,1]
    double min_distance_m = 1.0;      // 2-D distance clamp
};

struct ApGrid {
    int rows = 4;
    int cols = 4;
    double spacing_m = 100.0;
    double offset_m = 50.0;
    double height_m = 10.0;
};

enum class PilotType { hadamard, dft };

std::string to_string(PilotType t);
PilotType pilot_type_from_string(const std::string& s);

/// Everything needed to instantiate one scenario draw.
struct ScenarioConfig {
    SystemDims dims;
    double area_width_m = 400.0;
    double area_height_m = 400.0;
    ApGrid ap_grid;
    PathlossModel pathloss;
    PilotType pilot_type = PilotType::dft;
    std::size_t qam_order = 4;
    double tx_power_dbm = 16.0;
    double noise_power_dbm = -96.0;

    double sigma_x2() const;  // watts
    double sigma_n2() const;  // watts
};

// Key-value (JSON) scenario config I/O. Unknown keys are rejected.
ScenarioConfig load_scenario_config(const std::string& path);
ScenarioConfig parse_scenario_config(const std::string& json_text);
std::string scenario_config_to_json(const ScenarioConfig& cfg);

// APs on the configured grid, UE ground positions i.i.d. uniform over the area.
Geometry sample_geometry(const ScenarioConfig& cfg, Rng& rng);

// Distance-based pathloss plus lognormal shadow fading with inter-UE spatial
// correlation 2^(-distance / decorrelation_m); antenna correlation defaults to
// xi * I_N. Draws K shadowing values per AP from `rng`.
ChannelStats compute_channel_stats(const Geometry& geom, const SystemDims& dims,
                                   const PathlossModel& model, Rng& rng);

}  // namespace cfmimo

#endif
