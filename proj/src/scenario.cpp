// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/scenario.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "cfmimo/units.hpp"

namespace cfmimo {

void SystemDims::validate(bool expect_contamination) const {
    if (L <= 0 || N <= 0 || K <= 0 || T_p <= 0 || T_d < 0)
        throw std::invalid_argument("system dimensions must be strictly positive");
    if (expect_contamination && !(T_p < K))
        throw std::invalid_argument("contaminated scenario requires T_p < K");
}

void ChannelStats::validate() const {
    const int n_ap = L();
    const int n_ue = K();
    if (Xi.size() != static_cast<std::size_t>(n_ap) * n_ue)
        throw std::invalid_argument("ChannelStats: Xi/xi size mismatch");
    for (int l = 0; l < n_ap; ++l) {
        for (int k = 0; k < n_ue; ++k) {
            const Eigen::MatrixXcd& m = corr(l, k);
            if (m.rows() != m.cols()) throw std::invalid_argument("Xi must be square");
            if ((m - m.adjoint()).norm() > 1e-9 * std::max(1.0, m.norm()))
                throw std::invalid_argument("Xi must be Hermitian");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-9 * std::max(1e-300, es.eigenvalues().maxCoeff()))
                throw std::invalid_argument("Xi must be positive semidefinite");
            const double tr = m.real().trace() / static_cast<double>(m.rows());
            if (std::abs(tr - xi(l, k)) > 1e-12 * std::max(1.0, std::abs(tr)))
                throw std::invalid_argument("xi must equal trace(Xi)/N");
            if (xi(l, k) <= 0.0) throw std::invalid_argument("xi must be positive");
        }
    }
}

double ScenarioConfig::sigma_x2() const { return dbm_to_watt(tx_power_dbm); }
double ScenarioConfig::sigma_n2() const { return dbm_to_watt(noise_power_dbm); }

std::string to_string(PilotType t) { return t == PilotType::hadamard ? "hadamard" : "dft"; }

PilotType pilot_type_from_string(const std::string& s) {
    if (s == "hadamard") return PilotType::hadamard;
    if (s == "dft") return PilotType::dft;
    throw std::invalid_argument("unknown pilot type '" + s + "' (expected hadamard|dft)");
}

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw std::invalid_argument("unknown config key '" + it.key() + "' in " + where);
    }
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    json j = json::parse(json_text);
    ScenarioConfig cfg;
    check_keys(j, {"dims", "area", "ap_grid", "pathloss", "pilot_type", "constellation", "power", "seed"},
               "scenario");
    if (j.contains("dims")) {
        const json& d = j["dims"];
        check_keys(d, {"L", "N", "K", "Tp", "Td"}, "dims");
        cfg.dims.L = d.value("L", cfg.dims.L);
        cfg.dims.N = d.value("N", cfg.dims.N);
        cfg.dims.K = d.value("K", cfg.dims.K);
        cfg.dims.T_p = d.value("Tp", cfg.dims.T_p);
        cfg.dims.T_d = d.value("Td", cfg.dims.T_d);
    }
    if (j.contains("area")) {
        const json& a = j["area"];
        check_keys(a, {"width_m", "height_m"}, "area");
        cfg.area_width_m = a.value("width_m", cfg.area_width_m);
        cfg.area_height_m = a.value("height_m", cfg.area_height_m);
    }
    if (j.contains("ap_grid")) {
        const json& g = j["ap_grid"];
        check_keys(g, {"rows", "cols", "spacing_m", "offset_m", "height_m"}, "ap_grid");
        cfg.ap_grid.rows = g.value("rows", cfg.ap_grid.rows);
        cfg.ap_grid.cols = g.value("cols", cfg.ap_grid.cols);
        cfg.ap_grid.spacing_m = g.value("spacing_m", cfg.ap_grid.spacing_m);
        cfg.ap_grid.offset_m = g.value("offset_m", cfg.ap_grid.offset_m);
        cfg.ap_grid.height_m = g.value("height_m", cfg.ap_grid.height_m);
    }
    if (j.contains("pathloss")) {
        const json& p = j["pathloss"];
        check_keys(p,
                   {"const_db", "slope_db", "shadow_std_db", "decorrelation_m",
                    "ap_shadow_correlation", "min_distance_m"},
                   "pathloss");
        cfg.pathloss.const_db = p.value("const_db", cfg.pathloss.const_db);
        cfg.pathloss.slope_db = p.value("slope_db", cfg.pathloss.slope_db);
        cfg.pathloss.shadow_std_db = p.value("shadow_std_db", cfg.pathloss.shadow_std_db);
        cfg.pathloss.decorrelation_m = p.value("decorrelation_m", cfg.pathloss.decorrelation_m);
        cfg.pathloss.ap_shadow_correlation =
            p.value("ap_shadow_correlation", cfg.pathloss.ap_shadow_correlation);
        cfg.pathloss.min_distance_m = p.value("min_distance_m", cfg.pathloss.min_distance_m);
    }
    if (j.contains("pilot_type")) cfg.pilot_type = pilot_type_from_string(j["pilot_type"]);
    if (j.contains("constellation")) {
        const json& c = j["constellation"];
        check_keys(c, {"type", "order"}, "constellation");
        if (c.value("type", std::string("qam")) != "qam")
            throw std::invalid_argument("only qam constellations are supported");
        cfg.qam_order = c.value("order", cfg.qam_order);
    }
    if (j.contains("power")) {
        const json& p = j["power"];
        check_keys(p, {"tx_dbm", "noise_dbm"}, "power");
        cfg.tx_power_dbm = p.value("tx_dbm", cfg.tx_power_dbm);
        cfg.noise_power_dbm = p.value("noise_dbm", cfg.noise_power_dbm);
    }
    cfg.dims.validate();
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_config(ss.str());
}

std::string scenario_config_to_json(const ScenarioConfig& cfg) {
    json j;
    j["dims"] = {{"L", cfg.dims.L}, {"N", cfg.dims.N}, {"K", cfg.dims.K},
                 {"Tp", cfg.dims.T_p}, {"Td", cfg.dims.T_d}};
    j["area"] = {{"width_m", cfg.area_width_m}, {"height_m", cfg.area_height_m}};
    j["ap_grid"] = {{"rows", cfg.ap_grid.rows},
                    {"cols", cfg.ap_grid.cols},
                    {"spacing_m", cfg.ap_grid.spacing_m},
                    {"offset_m", cfg.ap_grid.offset_m},
                    {"height_m", cfg.ap_grid.height_m}};
    j["pathloss"] = {{"const_db", cfg.pathloss.const_db},
                     {"slope_db", cfg.pathloss.slope_db},
                     {"shadow_std_db", cfg.pathloss.shadow_std_db},
                     {"decorrelation_m", cfg.pathloss.decorrelation_m},
                     {"ap_shadow_correlation", cfg.pathloss.ap_shadow_correlation},
                     {"min_distance_m", cfg.pathloss.min_distance_m}};
    j["pilot_type"] = to_string(cfg.pilot_type);
    j["constellation"] = {{"type", "qam"}, {"order", cfg.qam_order}};
    j["power"] = {{"tx_dbm", cfg.tx_power_dbm}, {"noise_dbm", cfg.noise_power_dbm}};
    return j.dump(2);
}

Geometry sample_geometry(const ScenarioConfig& cfg, Rng& rng) {
    Geometry geom;
    geom.area_width = cfg.area_width_m;
    geom.area_height = cfg.area_height_m;
    const ApGrid& g = cfg.ap_grid;
    if (g.rows * g.cols != cfg.dims.L)
        throw std::invalid_argument("AP grid rows*cols must equal L");
    geom.ap_positions.reserve(static_cast<std::size_t>(cfg.dims.L));
    for (int i = 0; i < g.cols; ++i)
        for (int jj = 0; jj < g.rows; ++jj)
            geom.ap_positions.emplace_back(g.offset_m + i * g.spacing_m,
                                           g.offset_m + jj * g.spacing_m, g.height_m);
    geom.ue_positions.reserve(static_cast<std::size_t>(cfg.dims.K));
    for (int k = 0; k < cfg.dims.K; ++k) {
        const double x = rng.uniform(0.0, geom.area_width);
        const double y = rng.uniform(0.0, geom.area_height);
        geom.ue_positions.emplace_back(x, y, 0.0);
    }
    return geom;
}

namespace {

// PSD square root via eigendecomposition; tiny negative eigenvalues from
// roundoff are clamped to zero.
Eigen::MatrixXd psd_sqrt_real(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

ChannelStats compute_channel_stats(const Geometry& geom, const SystemDims& dims,
                                   const PathlossModel& model, Rng& rng) {
    const int L = dims.L;
    const int K = dims.K;
    if (static_cast<int>(geom.ap_positions.size()) != L ||
        static_cast<int>(geom.ue_positions.size()) != K)
        throw std::invalid_argument("geometry does not match system dimensions");

    // Shadowing correlation across UEs: 2^(-separation / decorrelation).
    Eigen::MatrixXd ue_corr(K, K);
    for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) {
            const double d = (geom.ue_positions[a] - geom.ue_positions[b]).head<2>().norm();
            ue_corr(a, b) = std::exp2(-d / model.decorrelation_m);
        }
    }
    const Eigen::MatrixXd corr_sqrt = psd_sqrt_real(ue_corr);

    // Optional cross-AP correlation through a shared component.
    const double rho = model.ap_shadow_correlation;
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("ap_shadow_correlation must be in [0,1]");
    Eigen::VectorXd shared(K);
    for (int k = 0; k < K; ++k) shared(k) = rng.standard_normal();
    shared = corr_sqrt * shared;

    ChannelStats stats;
    stats.xi.resize(L, K);
    stats.Xi.resize(static_cast<std::size_t>(L) * K);
    for (int l = 0; l < L; ++l) {
        Eigen::VectorXd own(K);
        for (int k = 0; k < K; ++k) own(k) = rng.standard_normal();
        own = corr_sqrt * own;
        const Eigen::VectorXd shadow_db =
            model.shadow_std_db * (std::sqrt(rho) * shared + std::sqrt(1.0 - rho) * own);
        for (int k = 0; k < K; ++k) {
            const double d2d = std::max(
                (geom.ap_positions[l] - geom.ue_positions[k]).head<2>().norm(), model.min_distance_m);
            const double dz = geom.ap_positions[l].z() - geom.ue_positions[k].z();
            const double d3d = std::hypot(d2d, dz);
            const double gain_db = model.const_db - model.slope_db * std::log10(d3d) + shadow_db(k);
            const double xi = db_to_linear(gain_db);
            stats.xi(l, k) = xi;
            stats.corr(l, k) =
                xi * Eigen::MatrixXcd::Identity(dims.N, dims.N);
        }
    }
    return stats;
}

}  // namespace cfmimo
