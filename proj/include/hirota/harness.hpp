#pragma once

#include "hirota/asymptotics.hpp"
#include "hirota/lax_spectral.hpp"
#include "hirota/pde_direct.hpp"
#include "hirota/scattering.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hirota {

struct DatumConfig {
    std::string shape = "gaussian";  // gaussian | sech | zero
    double amplitude = 0.3;
    double center = 0.0;
    double width = 1.0;
};

struct SimConfig {
    std::size_t n_x = std::size_t{1} << 15;
    double L_dom = 2400.0;
    double dt = 0.00625;
    double t_max = 200.0;
    double snap_dt = 0.00625;
    double store_dt = 0.25;
    double store_x_min = -20.0;
    double store_x_max = 150.0;
    bool absorber = true;
    double absorber_width = 300.0;
    double absorber_strength = 16.0;
};

struct SpectralConfig {
    double k_min = -6.0;
    double k_max = 6.0;
    std::size_t n_k = 2001;
    double dx_base = 0.01;
    double c_x = 0.1;
    double dt_base = 0.05;
    double c_t = 0.5;
    std::string reflection_source = "whole_line";  // whole_line | half_line
    std::size_t profile_points = 257;
    std::size_t gr_points = 41;     // real-axis samples for the global relation
    double gr_k_max = 4.0;
    double gr_dt_base = 0.005;     // t-step for the global-relation sweep
    double gr_c_t = 0.1;
    double contour_R = 6.0;
    std::size_t contour_n = 64;
    bool check_zeros = true;
};

struct Tolerances {
    double unitarity = 1e-8;
    double route = 1e-8;
    double global_relation = 1e-5;   // finite-horizon form, gating
    double zero_guard = 1e-8;
    double wind_guard = 1e-6;
    double asym_route = 1e-10;
    double chi = 1e-8;
    double mass = 1e-10;
    double edge = 1e-8;
    double leading_slope = -0.5;
    double leading_slope_tol = 0.05;
    double residual_slope_max = -0.85;
};

struct ExperimentConfig {
    Equation eq;
    DatumConfig datum;
    SimConfig sim;
    SpectralConfig spectral;
    Tolerances tol;
    std::vector<double> rays{0.05, 0.1, 0.2, 0.3};
    std::vector<double> times{25.0, 50.0, 100.0, 200.0};
    double fit_ray = 0.2;
    double sector_half_width = 0.0;  // <= 0: widest symmetric sector inside the ray interval
    std::string branch_policy = "printed";
    double t_min = kTMin;
    double g1_scale = 1.0;  // negative control: scale the extracted u_x(0,t) trace

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
    double sector_width(double xi) const;
};

struct Datum {
    Potential u;
    double l_cut;  // |u| below 1e-16 beyond +-l_cut around the origin
};

Datum make_datum(const DatumConfig& d);

HirotaSolver make_solver(const ExperimentConfig& cfg);
Run run_simulation(const ExperimentConfig& cfg);

struct ComparisonRecord {
    double xi = 0.0, t = 0.0;
    cplx u_direct, u_asym;
    double abs_err = 0.0;
    double normalized = 0.0;  // abs_err * t / ln t
};

ComparisonRecord make_record(double xi, double t, cplx u_direct, cplx u_as_over_sqrt_t);

struct DecayFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& y);
DecayFit fit_decay(const std::vector<ComparisonRecord>& records);

// sqrt(int_{(xi-w)t}^{(xi+w)t} |u|^2 dx / (2 w t)) from a stored frame
double sector_rms(const SnapshotStore& store, double xi, double half_width, double t);

struct CheckOutcome {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    bool gating = true;
};

struct SpectralStage {
    ScatteringSet set;
    std::vector<cplx> r_wl;
    double max_tail = 0.0;
};

SpectralStage run_spectral(const ExperimentConfig& cfg, const BoundaryTraces& traces);

struct GlobalRelationReport {
    double literal = 0.0;         // sup |B a - A b|
    double finite_horizon = 0.0;  // sup |A b - B a - e^{2 i omega T} b_T|, b_T from u(., T) on [0, x_end]
};

// both residuals over the real gr samples
GlobalRelationReport global_relation_report(const ExperimentConfig& cfg, const FieldState& final_state,
                                            const BoundaryTraces& traces);

struct RayAsymptotics {
    RaySpec ray;
    DeltaData dd;
    std::vector<AsymptoticValue> values;
};

RayAsymptotics run_asymptotics(const ExperimentConfig& cfg, const BoundaryTraces& traces, double xi);

struct PipelineResult {
    bool passed = false;
    std::vector<CheckOutcome> checks;
    std::vector<ComparisonRecord> records;
    std::vector<RayAsymptotics> asym;
    SpectralStage spectral;
    nlohmann::json summary;
};

// Runs every stage; a precomputed run may be passed to skip the simulation.
PipelineResult run_pipeline(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                            const Run* precomputed = nullptr);

BoundaryTraces scaled_g1(const BoundaryTraces& tr, double factor);

nlohmann::json run_manifest(const ExperimentConfig& cfg);

}  // namespace hirota
