// Copyright 2026 The holoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holoq.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "holoq/euclidean.hpp"
#include "holoq/grid.hpp"
#include "holoq/holotn.hpp"
#include "holoq/lorentzian.hpp"
#include "holoq/measurement.hpp"
#include "holoq/qstate.hpp"
#include "holoq/superselection.hpp"

struct holoq_grid {
  holoq::Grid1D value;
};
struct holoq_wavefunction {
  holoq::WaveFunction value;
};
struct holoq_density {
  holoq::DensityMatrix value;
};
struct holoq_path {
  holoq::BrownianPath value;
};
struct holoq_family {
  holoq::ProjectiveFamily value;
};
struct holoq_schedule {
  std::vector<holoq::ScheduleSegment> segments;
};
struct holoq_ledger {
  holoq::RegimeLedger value;
};
struct holoq_lattice {
  holoq::PhaseSpaceLattice value;
};
struct holoq_cell_basis {
  holoq::CellBasis value;
};
struct holoq_mera {
  holoq::MeraNetwork value;
};
struct holoq_hologram {
  holoq::ClassicalizedHologram value;
};

namespace {

thread_local std::string t_last_error;

holoq_status fail(holoq_status code, std::string message) {
  t_last_error = std::move(message);
  return code;
}

template <typename Fn>
holoq_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    return fail(HOLOQ_DOMAIN_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HOLOQ_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(HOLOQ_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(HOLOQ_RUNTIME_ERROR, e.what());
  } catch (...) {
    return fail(HOLOQ_RUNTIME_ERROR, "unknown internal error");
  }
}

holoq_status null_arg(const char* name) {
  return fail(HOLOQ_NULL_ARGUMENT, std::string(name) + " must not be NULL");
}

holoq_status small_buffer(std::size_t needed, std::size_t got) {
  return fail(HOLOQ_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(needed) +
                                          " elements, got " + std::to_string(got));
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.c_str(), s.size() + 1);
  }
  return out;
}

holoq::LorentzianParams lorentzian_params(double mass, double hbar, double dt) {
  holoq::LorentzianParams params;
  params.mass = mass;
  params.hbar = hbar;
  params.dt = dt;
  return params;
}

holoq::EuclideanParams euclidean_params(double mass, double hbar, double x_start) {
  holoq::EuclideanParams params;
  params.mass = mass;
  params.hbar = hbar;
  params.x_start = x_start;
  return params;
}

}  // namespace

extern "C" {

const char* holoq_version(void) { return "0.1.0"; }

const char* holoq_last_error_message(void) { return t_last_error.c_str(); }

void holoq_string_free(char* s) { std::free(s); }

/* ---- grid ---------------------------------------------------------- */

holoq_status holoq_grid_create(double x_min, double x_max, size_t n_points,
                               holoq_grid** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_grid{holoq::Grid1D(x_min, x_max, n_points)};
    return HOLOQ_OK;
  });
}

void holoq_grid_free(holoq_grid* grid) { delete grid; }

holoq_status holoq_grid_size(const holoq_grid* grid, size_t* out) {
  if (grid == nullptr) return null_arg("grid");
  if (out == nullptr) return null_arg("out");
  *out = grid->value.size();
  return HOLOQ_OK;
}

holoq_status holoq_grid_spacing(const holoq_grid* grid, double* out) {
  if (grid == nullptr) return null_arg("grid");
  if (out == nullptr) return null_arg("out");
  *out = grid->value.spacing();
  return HOLOQ_OK;
}

/* ---- wave functions and real-time evolution ------------------------ */

holoq_status holoq_gaussian_packet(const holoq_grid* grid, double x0, double sigma0,
                                   double p0, double hbar, holoq_wavefunction** out) {
  if (grid == nullptr) return null_arg("grid");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const holoq::GaussianPacketSpec spec{x0, sigma0, p0};
    *out = new holoq_wavefunction{holoq::gaussian_packet(grid->value, spec, hbar)};
    return HOLOQ_OK;
  });
}

void holoq_wavefunction_free(holoq_wavefunction* psi) { delete psi; }

holoq_status holoq_wavefunction_norm(const holoq_wavefunction* psi, double* out) {
  if (psi == nullptr) return null_arg("psi");
  if (out == nullptr) return null_arg("out");
  *out = psi->value.norm();
  return HOLOQ_OK;
}

holoq_status holoq_wavefunction_entropy_bits(const holoq_wavefunction* psi, double* out) {
  if (psi == nullptr) return null_arg("psi");
  if (out == nullptr) return null_arg("out");
  *out = psi->value.pure_state_entropy();
  return HOLOQ_OK;
}

holoq_status holoq_wavefunction_mean_position(const holoq_wavefunction* psi,
                                              double* out) {
  if (psi == nullptr) return null_arg("psi");
  if (out == nullptr) return null_arg("out");
  *out = psi->value.mean_position();
  return HOLOQ_OK;
}

holoq_status holoq_wavefunction_position_variance(const holoq_wavefunction* psi,
                                                  double* out) {
  if (psi == nullptr) return null_arg("psi");
  if (out == nullptr) return null_arg("out");
  *out = psi->value.position_variance();
  return HOLOQ_OK;
}

holoq_status holoq_wavefunction_density(const holoq_wavefunction* psi, double* buffer,
                                        size_t buffer_len) {
  if (psi == nullptr) return null_arg("psi");
  if (buffer == nullptr) return null_arg("buffer");
  const std::size_t n = psi->value.grid().size();
  if (buffer_len < n) return small_buffer(n, buffer_len);
  const std::vector<double> density = psi->value.probability_density();
  std::memcpy(buffer, density.data(), n * sizeof(double));
  return HOLOQ_OK;
}

holoq_status holoq_evolve(const holoq_wavefunction* psi, size_t n_steps, double mass,
                          double hbar, double dt, holoq_wavefunction** out) {
  if (psi == nullptr) return null_arg("psi");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_wavefunction{
        holoq::evolve(psi->value, n_steps, lorentzian_params(mass, hbar, dt))};
    return HOLOQ_OK;
  });
}

holoq_status holoq_kinetic_energy(const holoq_wavefunction* psi, double mass, double hbar,
                                  double* out) {
  if (psi == nullptr) return null_arg("psi");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::kinetic_energy(psi->value, lorentzian_params(mass, hbar, 1.0));
    return HOLOQ_OK;
  });
}

holoq_status holoq_gaussian_width_squared(double sigma0, double mass, double hbar,
                                          double t, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    if (!(sigma0 > 0.0)) {
      throw std::invalid_argument("sigma0 must be positive");
    }
    const holoq::GaussianPacketSpec spec{0.0, sigma0, 0.0};
    *out = holoq::gaussian_width_squared(spec, lorentzian_params(mass, hbar, 1.0), t);
    return HOLOQ_OK;
  });
}

/* ---- imaginary-time kernels and paths ------------------------------ */

holoq_status holoq_heat_kernel(double x, double x0, double tau, double mass, double hbar,
                               double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::heat_kernel(x, x0, tau, mass, hbar);
    return HOLOQ_OK;
  });
}

holoq_status holoq_wick_check(double x, double x0, double tau, double mass, double hbar,
                              double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::wick_check(x, x0, tau, mass, hbar);
    return HOLOQ_OK;
  });
}

holoq_status holoq_sample_path(size_t n_steps, double tau_step, double mass, double hbar,
                               double x_start, uint64_t seed, holoq_path** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_path{
        holoq::sample_path(n_steps, tau_step, euclidean_params(mass, hbar, x_start), seed)};
    return HOLOQ_OK;
  });
}

void holoq_path_free(holoq_path* path) { delete path; }

holoq_status holoq_path_n_steps(const holoq_path* path, size_t* out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  *out = path->value.n_steps();
  return HOLOQ_OK;
}

holoq_status holoq_path_positions(const holoq_path* path, double* buffer,
                                  size_t buffer_len) {
  if (path == nullptr) return null_arg("path");
  if (buffer == nullptr) return null_arg("buffer");
  const std::span<const double> x = path->value.positions();
  if (buffer_len < x.size()) return small_buffer(x.size(), buffer_len);
  std::memcpy(buffer, x.data(), x.size() * sizeof(double));
  return HOLOQ_OK;
}

holoq_status holoq_path_action(const holoq_path* path, double* out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  *out = holoq::euclidean_action(path->value);
  return HOLOQ_OK;
}

holoq_status holoq_path_information_bits(const holoq_path* path, double* out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::path_information(path->value).information_bits;
    return HOLOQ_OK;
  });
}

holoq_status holoq_information_bits(double action, double hbar, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::information(action, hbar).information_bits;
    return HOLOQ_OK;
  });
}

holoq_status holoq_total_information_bits(const double* actions, size_t n_actions,
                                          double hbar, double* out) {
  if (actions == nullptr) return null_arg("actions");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::vector<holoq::InfoReadout> readouts;
    readouts.reserve(n_actions);
    for (size_t i = 0; i < n_actions; ++i) {
      readouts.push_back(holoq::information(actions[i], hbar));
    }
    *out = holoq::total_information(readouts);
    return HOLOQ_OK;
  });
}

holoq_status holoq_sample_path_ensemble(size_t n_paths, size_t n_steps, double tau_step,
                                        double mass, double hbar, double x_start,
                                        uint64_t master_seed, holoq_path_summary* out,
                                        double* endpoints) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::vector<double> endpoint_storage;
    const holoq::PathEnsembleSummary summary = holoq::sample_path_ensemble(
        n_paths, n_steps, tau_step, euclidean_params(mass, hbar, x_start), master_seed,
        endpoints != nullptr ? &endpoint_storage : nullptr);
    if (endpoints != nullptr) {
      std::memcpy(endpoints, endpoint_storage.data(),
                  endpoint_storage.size() * sizeof(double));
    }
    out->n_paths = summary.n_paths;
    out->n_steps = summary.n_steps;
    out->mean_action = summary.mean_action;
    out->var_action = summary.var_action;
    out->mean_information_bits = summary.mean_information_bits;
    return HOLOQ_OK;
  });
}

/* ---- phase-space cells and coarse observables ----------------------- */

holoq_status holoq_lattice_centered(double dQ, size_t n_q, size_t n_p, double hbar,
                                    holoq_lattice** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_lattice{holoq::PhaseSpaceLattice::centered(dQ, n_q, n_p, hbar)};
    return HOLOQ_OK;
  });
}

void holoq_lattice_free(holoq_lattice* lattice) { delete lattice; }

holoq_status holoq_lattice_dp(const holoq_lattice* lattice, double* out) {
  if (lattice == nullptr) return null_arg("lattice");
  if (out == nullptr) return null_arg("out");
  *out = lattice->value.dP();
  return HOLOQ_OK;
}

holoq_status holoq_lattice_h(const holoq_lattice* lattice, double* out) {
  if (lattice == nullptr) return null_arg("lattice");
  if (out == nullptr) return null_arg("out");
  *out = lattice->value.h();
  return HOLOQ_OK;
}

holoq_status holoq_build_cell_basis(const holoq_lattice* lattice, const holoq_grid* grid,
                                    holoq_cell_basis** out) {
  if (lattice == nullptr) return null_arg("lattice");
  if (grid == nullptr) return null_arg("grid");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_cell_basis{holoq::build_cell_basis(lattice->value, grid->value)};
    return HOLOQ_OK;
  });
}

void holoq_cell_basis_free(holoq_cell_basis* basis) { delete basis; }

holoq_status holoq_cell_basis_size(const holoq_cell_basis* basis, size_t* out) {
  if (basis == nullptr) return null_arg("basis");
  if (out == nullptr) return null_arg("out");
  *out = basis->value.size();
  return HOLOQ_OK;
}

holoq_status holoq_cell_basis_gram_deviation(const holoq_cell_basis* basis, double* out) {
  if (basis == nullptr) return null_arg("basis");
  if (out == nullptr) return null_arg("out");
  *out = basis->value.gram_deviation();
  return HOLOQ_OK;
}

holoq_status holoq_coarse_commutator_frobenius(const holoq_cell_basis* basis,
                                               double* out) {
  if (basis == nullptr) return null_arg("basis");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::build_coarse_observables(basis->value).commutator_frobenius;
    return HOLOQ_OK;
  });
}

holoq_status holoq_fine_commutator_max_deviation(const holoq_grid* grid,
                                                 const holoq_wavefunction* const* states,
                                                 size_t n_states, double hbar,
                                                 double* out, int* any_flagged) {
  if (grid == nullptr) return null_arg("grid");
  if (states == nullptr) return null_arg("states");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::vector<holoq::WaveFunction> owned;
    owned.reserve(n_states);
    for (size_t i = 0; i < n_states; ++i) {
      if (states[i] == nullptr) {
        throw std::invalid_argument("states[" + std::to_string(i) + "] is NULL");
      }
      owned.push_back(states[i]->value);
    }
    const holoq::FineCommutatorResult result =
        holoq::fine_commutator_check(grid->value, owned, hbar);
    *out = result.max_deviation;
    if (any_flagged != nullptr) {
      *any_flagged = result.any_flagged ? 1 : 0;
    }
    return HOLOQ_OK;
  });
}

/* ---- projective measurement and the regime ledger ------------------- */

holoq_status holoq_family_pauli_z(holoq_family** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_family{holoq::ProjectiveFamily::pauli_z()};
    return HOLOQ_OK;
  });
}

holoq_status holoq_family_pauli_x(holoq_family** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_family{holoq::ProjectiveFamily::pauli_x()};
    return HOLOQ_OK;
  });
}

holoq_status holoq_family_computational(size_t dim, holoq_family** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_family{holoq::ProjectiveFamily::computational(dim)};
    return HOLOQ_OK;
  });
}

void holoq_family_free(holoq_family* family) { delete family; }

holoq_status holoq_family_size(const holoq_family* family, size_t* out) {
  if (family == nullptr) return null_arg("family");
  if (out == nullptr) return null_arg("out");
  *out = family->value.size();
  return HOLOQ_OK;
}

holoq_status holoq_density_pure(const double* re, const double* im, size_t dim,
                                holoq_density** out) {
  if (re == nullptr) return null_arg("re");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; ++i) {
      v[static_cast<Eigen::Index>(i)] =
          std::complex<double>(re[i], im != nullptr ? im[i] : 0.0);
    }
    *out = new holoq_density{holoq::DensityMatrix::pure(v)};
    return HOLOQ_OK;
  });
}

void holoq_density_free(holoq_density* rho) { delete rho; }

holoq_status holoq_density_dim(const holoq_density* rho, size_t* out) {
  if (rho == nullptr) return null_arg("rho");
  if (out == nullptr) return null_arg("out");
  *out = rho->value.dim();
  return HOLOQ_OK;
}

holoq_status holoq_density_vn_entropy_bits(const holoq_density* rho, double* out) {
  if (rho == nullptr) return null_arg("rho");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::vn_entropy(rho->value);
    return HOLOQ_OK;
  });
}

holoq_status holoq_nonselective(const holoq_density* rho, const holoq_family* family,
                                holoq_density** out) {
  if (rho == nullptr) return null_arg("rho");
  if (family == nullptr) return null_arg("family");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_density{holoq::nonselective(rho->value, family->value)};
    return HOLOQ_OK;
  });
}

holoq_status holoq_born_distribution(const holoq_density* rho, const holoq_family* family,
                                     double* buffer, size_t buffer_len) {
  if (rho == nullptr) return null_arg("rho");
  if (family == nullptr) return null_arg("family");
  if (buffer == nullptr) return null_arg("buffer");
  if (buffer_len < family->value.size()) {
    return small_buffer(family->value.size(), buffer_len);
  }
  return guarded([&] {
    const std::vector<double> p = holoq::born_distribution(rho->value, family->value);
    std::memcpy(buffer, p.data(), p.size() * sizeof(double));
    return HOLOQ_OK;
  });
}

holoq_status holoq_read_event(const holoq_density* rho, const holoq_family* family,
                              uint64_t seed, size_t* outcome, holoq_density** post,
                              double* info_gain_bits, int* partial) {
  if (rho == nullptr) return null_arg("rho");
  if (family == nullptr) return null_arg("family");
  if (outcome == nullptr) return null_arg("outcome");
  return guarded([&] {
    holoq::ReadEvent event = holoq::read_event(rho->value, family->value, seed);
    *outcome = event.outcome;
    if (post != nullptr) {
      *post = new holoq_density{std::move(event.post_state)};
    }
    if (info_gain_bits != nullptr) {
      *info_gain_bits = event.info_gain_bits;
    }
    if (partial != nullptr) {
      *partial = event.partial ? 1 : 0;
    }
    return HOLOQ_OK;
  });
}

holoq_status holoq_schedule_create(holoq_schedule** out) {
  if (out == nullptr) return null_arg("out");
  *out = new holoq_schedule{};
  return HOLOQ_OK;
}

void holoq_schedule_free(holoq_schedule* schedule) { delete schedule; }

holoq_status holoq_schedule_add_unitary(holoq_schedule* schedule, double t_start,
                                        double t_end) {
  if (schedule == nullptr) return null_arg("schedule");
  return guarded([&] {
    if (!(t_end > t_start)) {
      throw std::invalid_argument("unitary span needs t_end > t_start");
    }
    schedule->segments.push_back(holoq::UnitarySpan{t_start, t_end});
    return HOLOQ_OK;
  });
}

holoq_status holoq_schedule_add_measurement(holoq_schedule* schedule, double t_start,
                                            double t_end, const holoq_family* family) {
  if (schedule == nullptr) return null_arg("schedule");
  if (family == nullptr) return null_arg("family");
  return guarded([&] {
    if (!(t_end > t_start)) {
      throw std::invalid_argument("measurement window needs t_end > t_start");
    }
    schedule->segments.push_back(
        holoq::MeasurementWindow{t_start, t_end, family->value});
    return HOLOQ_OK;
  });
}

holoq_status holoq_run_schedule(const holoq_density* initial,
                                const holoq_schedule* schedule, uint64_t seed,
                                holoq_ledger** out) {
  if (initial == nullptr) return null_arg("initial");
  if (schedule == nullptr) return null_arg("schedule");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_ledger{
        holoq::run_lorentzian_schedule(initial->value, schedule->segments, seed)};
    return HOLOQ_OK;
  });
}

void holoq_ledger_free(holoq_ledger* ledger) { delete ledger; }

holoq_status holoq_ledger_size(const holoq_ledger* ledger, size_t* out) {
  if (ledger == nullptr) return null_arg("ledger");
  if (out == nullptr) return null_arg("out");
  *out = ledger->value.size();
  return HOLOQ_OK;
}

holoq_status holoq_ledger_n_duals(const holoq_ledger* ledger, size_t* out) {
  if (ledger == nullptr) return null_arg("ledger");
  if (out == nullptr) return null_arg("out");
  *out = ledger->value.n_duals();
  return HOLOQ_OK;
}

holoq_status holoq_ledger_record(const holoq_ledger* ledger, size_t index,
                                 holoq_phase_record* out) {
  if (ledger == nullptr) return null_arg("ledger");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    if (index >= ledger->value.size()) {
      throw std::out_of_range("record index out of range");
    }
    const holoq::PhaseRecord& r = ledger->value.records()[index];
    out->regime = r.regime == holoq::Regime::lorentzian ? 0 : 1;
    out->kind = static_cast<int>(r.kind);
    out->entropy_bits = r.entropy_bits;
    out->information_bits = r.information_bits;
    out->span_start = r.span_start;
    out->span_end = r.span_end;
    out->partial = r.partial ? 1 : 0;
    out->dual_of = r.dual_of;
    return HOLOQ_OK;
  });
}

holoq_status holoq_attach_duals(const holoq_ledger* ledger, double a_tn_bits,
                                double mass, double hbar, size_t n_steps, uint64_t seed,
                                holoq_ledger** out) {
  if (ledger == nullptr) return null_arg("ledger");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    holoq::DualConfig config;
    config.mass = mass;
    config.hbar = hbar;
    config.n_steps = n_steps;
    config.seed = seed;
    *out = new holoq_ledger{holoq::attach_euclidean_duals(ledger->value, a_tn_bits, config)};
    return HOLOQ_OK;
  });
}

holoq_status holoq_ledger_to_json(const holoq_ledger* ledger, char** out) {
  if (ledger == nullptr) return null_arg("ledger");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    char* json = copy_string(holoq::ledger_to_json(ledger->value));
    if (json == nullptr) {
      throw std::runtime_error("allocation failed");
    }
    *out = json;
    return HOLOQ_OK;
  });
}

/* ---- classicalized network ------------------------------------------ */

holoq_status holoq_mera_build(size_t n_leaves, holoq_mera** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_mera{holoq::MeraNetwork::build(n_leaves)};
    return HOLOQ_OK;
  });
}

void holoq_mera_free(holoq_mera* mera) { delete mera; }

holoq_status holoq_mera_n_sites(const holoq_mera* mera, size_t* out) {
  if (mera == nullptr) return null_arg("mera");
  if (out == nullptr) return null_arg("out");
  *out = mera->value.n_sites();
  return HOLOQ_OK;
}

holoq_status holoq_mera_n_bonds(const holoq_mera* mera, size_t* out) {
  if (mera == nullptr) return null_arg("mera");
  if (out == nullptr) return null_arg("out");
  *out = mera->value.n_bonds();
  return HOLOQ_OK;
}

holoq_status holoq_mera_n_layers(const holoq_mera* mera, size_t* out) {
  if (mera == nullptr) return null_arg("mera");
  if (out == nullptr) return null_arg("out");
  *out = mera->value.n_layers();
  return HOLOQ_OK;
}

holoq_status holoq_mera_to_json(const holoq_mera* mera, char** out) {
  if (mera == nullptr) return null_arg("mera");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    char* json = copy_string(holoq::mera_to_json(mera->value));
    if (json == nullptr) {
      throw std::runtime_error("allocation failed");
    }
    *out = json;
    return HOLOQ_OK;
  });
}

holoq_status holoq_minimal_cut(const holoq_mera* mera, size_t begin, size_t end,
                               size_t* out) {
  if (mera == nullptr) return null_arg("mera");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::minimal_cut(mera->value, begin, end);
    return HOLOQ_OK;
  });
}

holoq_status holoq_classicalize(const holoq_mera* mera, holoq_hologram** out) {
  if (mera == nullptr) return null_arg("mera");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new holoq_hologram{holoq::classicalize(mera->value)};
    return HOLOQ_OK;
  });
}

void holoq_hologram_free(holoq_hologram* hologram) { delete hologram; }

holoq_status holoq_hologram_a_tn(const holoq_hologram* hologram, size_t* out) {
  if (hologram == nullptr) return null_arg("hologram");
  if (out == nullptr) return null_arg("out");
  *out = hologram->value.a_tn();
  return HOLOQ_OK;
}

holoq_status holoq_hologram_entropy_bits(const holoq_hologram* hologram, double* out) {
  if (hologram == nullptr) return null_arg("hologram");
  if (out == nullptr) return null_arg("out");
  *out = hologram->value.entropy_bits();
  return HOLOQ_OK;
}

holoq_status holoq_readout_spin_events(const holoq_hologram* hologram, size_t n_events,
                                       uint64_t seed, holoq_spin_event* buffer,
                                       size_t buffer_len) {
  if (hologram == nullptr) return null_arg("hologram");
  if (buffer == nullptr && n_events > 0) return null_arg("buffer");
  if (buffer_len < n_events) return small_buffer(n_events, buffer_len);
  return guarded([&] {
    const std::vector<holoq::SpinEvent> events =
        holoq::readout_spin_events(hologram->value, n_events, seed);
    for (size_t i = 0; i < events.size(); ++i) {
      buffer[i].site = events[i].site;
      buffer[i].spin = events[i].spin;
    }
    return HOLOQ_OK;
  });
}

holoq_status holoq_events_from_information(double information_bits, size_t* n_events,
                                           double* remainder_bits) {
  if (n_events == nullptr) return null_arg("n_events");
  return guarded([&] {
    const holoq::EventBudget budget = holoq::events_from_information(information_bits);
    *n_events = budget.n_events;
    if (remainder_bits != nullptr) {
      *remainder_bits = budget.remainder_bits;
    }
    return HOLOQ_OK;
  });
}

/* ---- generic entropy helpers ---------------------------------------- */

holoq_status holoq_shannon_entropy_bits(const double* p, size_t n, double* out) {
  if (p == nullptr) return null_arg("p");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = holoq::shannon_entropy(std::span<const double>(p, n));
    return HOLOQ_OK;
  });
}

} /* extern "C" */
