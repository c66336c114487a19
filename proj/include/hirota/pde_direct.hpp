#pragma once

#include "hirota/sampled.hpp"
#include "hirota/types.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hirota {

struct Absorber {
    bool enabled = false;
    double width = 300.0;    // length of the damping band next to the periodic seam
    double strength = 16.0;  // peak damping rate
};

struct SolverConfig {
    Equation eq;
    std::size_t n_x = std::size_t{1} << 15;
    double length = 2400.0;  // periodic box [-length/2, length/2)
    double mass_tol = 1e-10;
    double edge_tol = 1e-8;
    Absorber absorber;
    bool dealias = true;
};

struct FieldState {
    UniformGrid x_grid;
    std::vector<cplx> values;
    double t = 0.0;
    double mass0 = 0.0;
};

struct TracePoint {
    cplx g0, g1, g2;
};

struct BoundaryTraces {
    UniformGrid t_grid;
    std::vector<cplx> g0, g1, g2;

    SampledComplexFunction spline(int order) const;
};

struct SnapshotStore {
    UniformGrid x_grid;
    UniformGrid t_grid;
    std::vector<std::vector<cplx>> frames;
};

struct RunConfig {
    double dt = 0.025;
    double t_max = 200.0;
    double snap_dt = 0.05;   // trace cadence
    double store_dt = 0.25;  // snapshot cadence for evaluate()
    double store_x_min = -20.0;
    double store_x_max = 150.0;
};

struct Run {
    Equation eq;
    BoundaryTraces traces;
    SnapshotStore store;
    FieldState final_state;
    double max_mass_drift = 0.0;
    double max_edge = 0.0;
};

// Integrating-factor RK4 for i u_t + a(u_xx + 2|u|^2 u) + i b(u_xxx + 6|u|^2 u_x) = 0
// on a periodic box. Not thread-safe: FFT work buffers are shared between calls.
class HirotaSolver {
public:
    explicit HirotaSolver(SolverConfig cfg);
    ~HirotaSolver();
    HirotaSolver(const HirotaSolver&) = delete;
    HirotaSolver& operator=(const HirotaSolver&) = delete;

    const SolverConfig& config() const { return cfg_; }
    UniformGrid grid() const;

    FieldState initial_state(const std::function<cplx(double)>& datum) const;
    FieldState step(const FieldState& state, double dt) const;
    FieldState advance(const FieldState& state, double dt, std::size_t n_steps) const;

    double mass(std::span<const cplx> values) const;
    TracePoint trace_at(const FieldState& state, double x) const;

    // Fourier-side stepping used by simulate(); spectrum is unnormalized FFTW output.
    void to_spectrum(std::span<const cplx> values, std::vector<cplx>& spec) const;
    void to_physical(const std::vector<cplx>& spec, std::vector<cplx>& values) const;
    void rk4_spectral(std::vector<cplx>& spec, double dt) const;
    double spectral_mass(const std::vector<cplx>& spec) const;
    TracePoint spectral_trace(const std::vector<cplx>& spec, double x) const;

private:
    struct Impl;
    SolverConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

Run simulate(const HirotaSolver& solver, const FieldState& init, const RunConfig& rc);

BoundaryTraces extract_traces(const HirotaSolver& solver, std::span<const FieldState> run, const UniformGrid& t_grid);

cplx evaluate(const SnapshotStore& store, double x, double t);

}  // namespace hirota
