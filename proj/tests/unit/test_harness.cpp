#include "doctest.h"

#include "hirota/harness.hpp"
#include "hirota/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hirota;
namespace fs = std::filesystem;

namespace {

const std::vector<double> kTimes{25.0, 50.0, 100.0, 200.0};

std::vector<double> model(double (*f)(double)) {
    std::vector<double> y;
    for (double t : kTimes) y.push_back(f(t));
    return y;
}

ExperimentConfig small_config(double amplitude) {
    ExperimentConfig c;
    c.datum.amplitude = amplitude;
    c.sim.n_x = 4096;
    c.sim.L_dom = 400.0;
    c.sim.t_max = 20.0;
    c.sim.store_x_min = -5.0;
    c.sim.store_x_max = 10.0;
    c.sim.absorber_width = 80.0;
    c.tol.edge = 1e-5;
    c.spectral.n_k = 41;
    c.spectral.k_min = -2.0;
    c.spectral.k_max = 2.0;
    c.spectral.profile_points = 65;
    c.spectral.gr_points = 9;
    c.spectral.gr_k_max = 1.0;
    c.spectral.contour_R = 3.0;
    c.spectral.contour_n = 16;
    c.rays = {0.2};
    c.fit_ray = 0.2;
    c.times = {11.0, 14.0, 17.0, 20.0};
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("power-law fits") {
    const DecayFit a = fit_power_law(kTimes, model([](double t) { return 3.0 / t; }));
    CHECK(std::abs(a.slope + 1.0) < 1e-6);
    CHECK(a.r2 == doctest::Approx(1.0));
    const DecayFit b = fit_power_law(kTimes, model([](double t) { return 3.0 * std::log(t) / t; }));
    // local slope -1 + 1/ln t, bracketed by its values at the ends
    CHECK(b.slope > -1.0 + 1.0 / std::log(kTimes.back()));
    CHECK(b.slope < -1.0 + 1.0 / std::log(kTimes.front()));
    const DecayFit c = fit_power_law(kTimes, model([](double t) { return 0.2 / std::sqrt(t); }));
    CHECK(std::abs(c.slope + 0.5) < 1e-6);
    CHECK(c.intercept == doctest::Approx(std::log(0.2)));

    std::vector<ComparisonRecord> recs;
    for (double t : kTimes) recs.push_back(make_record(0.2, t, cplx(1.0 / t, 0.0), 0.0));
    CHECK(std::abs(fit_decay(recs).slope + 1.0) < 1e-6);

    const auto degenerate = [](const std::vector<double>& t, const std::vector<double>& y) {
        try {
            fit_power_law(t, y);
        } catch (const Error& e) {
            return e.code() == ErrorCode::DegenerateFit;
        }
        return false;
    };
    CHECK(degenerate(kTimes, {1e-14, 1e-15, 0.0, 1e-14}));
    CHECK(degenerate({25.0, 50.0, 100.0}, {1.0, 0.5, 0.25}));
    CHECK(degenerate({25.0, 25.0, 25.0, 25.0}, {1.0, 0.5, 0.25, 0.1}));
}

TEST_CASE("comparison records") {
    const ComparisonRecord r = make_record(0.1, 50.0, cplx(0.3, 0.4), cplx(0.0, 0.4));
    CHECK(r.abs_err == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.normalized == doctest::Approx(0.3 * 50.0 / std::log(50.0)));
}

TEST_CASE("config json round trip and validation") {
    ExperimentConfig c;
    c.eq = {1.0, 0.5};
    c.datum.width = 1.5;
    c.rays = {0.1, 0.3, 0.5};
    c.fit_ray = 0.3;
    c.branch_policy = "corrected";
    c.spectral.reflection_source = "half_line";
    const nlohmann::json j = c.to_json();
    const ExperimentConfig d = ExperimentConfig::from_json(j);
    CHECK(d.to_json() == j);
    CHECK(d.eq.beta == 0.5);
    CHECK(d.rays.size() == 3);

    ExperimentConfig bad;
    bad.rays = {0.2, 0.4};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ExperimentConfig{};
    bad.fit_ray = 0.15;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ExperimentConfig{};
    bad.times = {5.0, 50.0, 100.0, 200.0};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ExperimentConfig{};
    bad.branch_policy = "other";
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"spectral", {{"reflection_source", "x"}}}}), Error);

    const ExperimentConfig def;
    CHECK(def.sector_width(0.2) == doctest::Approx(1.0 / 3.0 - 0.2));
    CHECK(def.sector_width(0.1) == doctest::Approx(0.1));
}

TEST_CASE("datum and helpers") {
    const Datum g = make_datum({"gaussian", 0.3, 1.0, 2.0});
    CHECK(g.u(1.0) == cplx(0.3));
    CHECK(std::abs(g.u(g.l_cut)) <= 1.0001e-16);
    CHECK(std::abs(g.u(-g.l_cut)) <= 1e-16);
    const Datum s = make_datum({"sech", 0.5, 0.0, 1.0});
    CHECK(std::abs(s.u(s.l_cut)) <= 1.0001e-16);
    CHECK(make_datum({"zero", 0.0, 0.0, 1.0}).u(0.3) == cplx{});
    CHECK_THROWS_AS(make_datum({"box", 1.0, 0.0, 1.0}), Error);

    BoundaryTraces tr;
    tr.t_grid = {0.0, 1.0, 4};
    tr.g0 = tr.g1 = tr.g2 = {1.0, 2.0, 3.0, 4.0};
    const BoundaryTraces sc = scaled_g1(tr, 1.1);
    CHECK(std::abs(sc.g1[2] - 3.3) < 1e-15);
    CHECK(sc.g0[2] == cplx(3.0));

    SnapshotStore st;
    st.x_grid = {-10.0, 0.1, 301};
    st.t_grid = {0.0, 1.0, 21};
    st.frames.assign(21, std::vector<cplx>(301, cplx(0.0, 0.25)));
    CHECK(sector_rms(st, 0.2, 0.1, 10.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("zero-amplitude pipeline is trivial") {
    const fs::path out = fs::temp_directory_path() / "hirota_zero_pipeline";
    fs::remove_all(out);
    const PipelineResult res = run_pipeline(small_config(0.0), out);
    for (const char* f : {"manifest.json", "traces.csv", "spectral.csv", "scattering.csv", "asym.csv", "compare.csv",
                          "summary.json"})
        CHECK(fs::exists(out / f));
    const ScatteringSet& set = res.spectral.set;
    for (std::size_t i = 0; i < set.size(); ++i) {
        CHECK(std::abs(set.a[i] - 1.0) < 1e-11);
        CHECK(set.b[i] == cplx{});
        CHECK(std::abs(set.A[i] - 1.0) < 1e-11);
        CHECK(set.B[i] == cplx{});
        CHECK(set.r[i] == cplx{});
    }
    for (const auto& ra : res.asym)
        for (const auto& v : ra.values) CHECK(v.u_as == cplx{});
    for (const auto& r : res.records) {
        CHECK(r.u_direct == cplx{});
        CHECK(r.abs_err == 0.0);
    }
    // nothing to fit when every error vanishes
    std::vector<std::string> failing;
    for (const auto& c : res.checks)
        if (c.gating && !c.passed) failing.push_back(c.name);
    CHECK(failing == std::vector<std::string>{"residual_slope", "leading_slope"});
    fs::remove_all(out);
}

TEST_CASE("pipeline output is deterministic") {
    const ExperimentConfig cfg = small_config(0.3);
    const fs::path a = fs::temp_directory_path() / "hirota_det_a";
    const fs::path b = fs::temp_directory_path() / "hirota_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const PipelineResult ra = run_pipeline(cfg, a);
    const PipelineResult rb = run_pipeline(cfg, b);
    CHECK_FALSE(ra.summary.contains("error"));
    for (const char* f : {"traces.csv", "spectral.csv", "scattering.csv", "asym.csv", "compare.csv", "summary.json"})
        CHECK(slurp(a / f) == slurp(b / f));
    const io::Table t = io::read_table(a / "scattering.csv");
    CHECK(t.get("k").size() == cfg.spectral.n_k);
    fs::remove_all(a);
    fs::remove_all(b);
}
