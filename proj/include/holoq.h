/* Copyright 2026 The holoq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the holoq shared library.
 *
 * Conventions:
 *   - Every function returns a holoq_status; results go through out
 *     parameters. HOLOQ_OK is 0.
 *   - On failure, holoq_last_error_message() returns a thread-local
 *     description, valid until the next failing call on the same thread.
 *   - Objects are opaque handles created by *_create/_build factories and
 *     released by the matching *_free. Freeing NULL is a no-op.
 *   - Buffer-filling functions take the buffer length in elements and fail
 *     with HOLOQ_BUFFER_TOO_SMALL (reporting the required size) when it is
 *     insufficient.
 *   - Strings returned through char** are heap-allocated; release them
 *     with holoq_string_free.
 */

#ifndef HOLOQ_H
#define HOLOQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HOLOQ_BUILD_SHARED)
#define HOLOQ_API __declspec(dllexport)
#else
#define HOLOQ_API __declspec(dllimport)
#endif
#else
#define HOLOQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum holoq_status {
  HOLOQ_OK = 0,
  HOLOQ_NULL_ARGUMENT = 1,
  HOLOQ_INVALID_ARGUMENT = 2,
  HOLOQ_DOMAIN_ERROR = 3,
  HOLOQ_RUNTIME_ERROR = 4,
  HOLOQ_BUFFER_TOO_SMALL = 5
} holoq_status;

typedef struct holoq_grid holoq_grid;
typedef struct holoq_wavefunction holoq_wavefunction;
typedef struct holoq_density holoq_density;
typedef struct holoq_path holoq_path;
typedef struct holoq_family holoq_family;
typedef struct holoq_schedule holoq_schedule;
typedef struct holoq_ledger holoq_ledger;
typedef struct holoq_lattice holoq_lattice;
typedef struct holoq_cell_basis holoq_cell_basis;
typedef struct holoq_mera holoq_mera;
typedef struct holoq_hologram holoq_hologram;

HOLOQ_API const char* holoq_version(void);
HOLOQ_API const char* holoq_last_error_message(void);
HOLOQ_API void holoq_string_free(char* s);

/* ---- grid ---------------------------------------------------------- */

HOLOQ_API holoq_status holoq_grid_create(double x_min, double x_max, size_t n_points,
                                         holoq_grid** out);
HOLOQ_API void holoq_grid_free(holoq_grid* grid);
HOLOQ_API holoq_status holoq_grid_size(const holoq_grid* grid, size_t* out);
HOLOQ_API holoq_status holoq_grid_spacing(const holoq_grid* grid, double* out);

/* ---- wave functions and real-time evolution ------------------------ */

HOLOQ_API holoq_status holoq_gaussian_packet(const holoq_grid* grid, double x0,
                                             double sigma0, double p0, double hbar,
                                             holoq_wavefunction** out);
HOLOQ_API void holoq_wavefunction_free(holoq_wavefunction* psi);
HOLOQ_API holoq_status holoq_wavefunction_norm(const holoq_wavefunction* psi, double* out);
HOLOQ_API holoq_status holoq_wavefunction_entropy_bits(const holoq_wavefunction* psi,
                                                       double* out);
HOLOQ_API holoq_status holoq_wavefunction_mean_position(const holoq_wavefunction* psi,
                                                        double* out);
HOLOQ_API holoq_status holoq_wavefunction_position_variance(const holoq_wavefunction* psi,
                                                            double* out);
/* |psi|^2 per grid point; needs grid-size elements. */
HOLOQ_API holoq_status holoq_wavefunction_density(const holoq_wavefunction* psi,
                                                  double* buffer, size_t buffer_len);
HOLOQ_API holoq_status holoq_evolve(const holoq_wavefunction* psi, size_t n_steps,
                                    double mass, double hbar, double dt,
                                    holoq_wavefunction** out);
HOLOQ_API holoq_status holoq_kinetic_energy(const holoq_wavefunction* psi, double mass,
                                            double hbar, double* out);
/* Closed-form sigma(t)^2 = sigma0^2 + (hbar t / (2 m sigma0))^2. */
HOLOQ_API holoq_status holoq_gaussian_width_squared(double sigma0, double mass,
                                                    double hbar, double t, double* out);

/* ---- imaginary-time kernels and paths ------------------------------ */

HOLOQ_API holoq_status holoq_heat_kernel(double x, double x0, double tau, double mass,
                                         double hbar, double* out);
/* |analytically continued real-time kernel - heat kernel| at (x, x0, tau). */
HOLOQ_API holoq_status holoq_wick_check(double x, double x0, double tau, double mass,
                                        double hbar, double* out);

HOLOQ_API holoq_status holoq_sample_path(size_t n_steps, double tau_step, double mass,
                                         double hbar, double x_start, uint64_t seed,
                                         holoq_path** out);
HOLOQ_API void holoq_path_free(holoq_path* path);
HOLOQ_API holoq_status holoq_path_n_steps(const holoq_path* path, size_t* out);
/* n_steps + 1 positions. */
HOLOQ_API holoq_status holoq_path_positions(const holoq_path* path, double* buffer,
                                            size_t buffer_len);
HOLOQ_API holoq_status holoq_path_action(const holoq_path* path, double* out);
HOLOQ_API holoq_status holoq_path_information_bits(const holoq_path* path, double* out);

/* I = action / (hbar ln 2). */
HOLOQ_API holoq_status holoq_information_bits(double action, double hbar, double* out);
/* Additive total over per-particle actions sharing one hbar. */
HOLOQ_API holoq_status holoq_total_information_bits(const double* actions,
                                                    size_t n_actions, double hbar,
                                                    double* out);

typedef struct holoq_path_summary {
  size_t n_paths;
  size_t n_steps;
  double mean_action;
  double var_action;
  double mean_information_bits;
} holoq_path_summary;

/* endpoints may be NULL; otherwise it receives n_paths final positions. */
HOLOQ_API holoq_status holoq_sample_path_ensemble(size_t n_paths, size_t n_steps,
                                                  double tau_step, double mass,
                                                  double hbar, double x_start,
                                                  uint64_t master_seed,
                                                  holoq_path_summary* out,
                                                  double* endpoints);

/* ---- phase-space cells and coarse observables ----------------------- */

HOLOQ_API holoq_status holoq_lattice_centered(double dQ, size_t n_q, size_t n_p,
                                              double hbar, holoq_lattice** out);
HOLOQ_API void holoq_lattice_free(holoq_lattice* lattice);
HOLOQ_API holoq_status holoq_lattice_dp(const holoq_lattice* lattice, double* out);
HOLOQ_API holoq_status holoq_lattice_h(const holoq_lattice* lattice, double* out);

HOLOQ_API holoq_status holoq_build_cell_basis(const holoq_lattice* lattice,
                                              const holoq_grid* grid,
                                              holoq_cell_basis** out);
HOLOQ_API void holoq_cell_basis_free(holoq_cell_basis* basis);
HOLOQ_API holoq_status holoq_cell_basis_size(const holoq_cell_basis* basis, size_t* out);
HOLOQ_API holoq_status holoq_cell_basis_gram_deviation(const holoq_cell_basis* basis,
                                                       double* out);
HOLOQ_API holoq_status holoq_coarse_commutator_frobenius(const holoq_cell_basis* basis,
                                                         double* out);
/* Max |<psi|[Q,P]|psi> - i hbar| over the given states (boundary-flagged
 * states excluded); any_flagged may be NULL. */
HOLOQ_API holoq_status holoq_fine_commutator_max_deviation(
    const holoq_grid* grid, const holoq_wavefunction* const* states, size_t n_states,
    double hbar, double* out, int* any_flagged);

/* ---- projective measurement and the regime ledger ------------------- */

HOLOQ_API holoq_status holoq_family_pauli_z(holoq_family** out);
HOLOQ_API holoq_status holoq_family_pauli_x(holoq_family** out);
HOLOQ_API holoq_status holoq_family_computational(size_t dim, holoq_family** out);
HOLOQ_API void holoq_family_free(holoq_family* family);
HOLOQ_API holoq_status holoq_family_size(const holoq_family* family, size_t* out);

/* Pure state |v><v| from amplitude arrays (normalized internally); im may
 * be NULL for real amplitudes. */
HOLOQ_API holoq_status holoq_density_pure(const double* re, const double* im, size_t dim,
                                          holoq_density** out);
HOLOQ_API void holoq_density_free(holoq_density* rho);
HOLOQ_API holoq_status holoq_density_dim(const holoq_density* rho, size_t* out);
HOLOQ_API holoq_status holoq_density_vn_entropy_bits(const holoq_density* rho,
                                                     double* out);

HOLOQ_API holoq_status holoq_nonselective(const holoq_density* rho,
                                          const holoq_family* family,
                                          holoq_density** out);
HOLOQ_API holoq_status holoq_born_distribution(const holoq_density* rho,
                                               const holoq_family* family,
                                               double* buffer, size_t buffer_len);
/* post and partial may be NULL when only the outcome is needed. */
HOLOQ_API holoq_status holoq_read_event(const holoq_density* rho,
                                        const holoq_family* family, uint64_t seed,
                                        size_t* outcome, holoq_density** post,
                                        double* info_gain_bits, int* partial);

HOLOQ_API holoq_status holoq_schedule_create(holoq_schedule** out);
HOLOQ_API void holoq_schedule_free(holoq_schedule* schedule);
HOLOQ_API holoq_status holoq_schedule_add_unitary(holoq_schedule* schedule,
                                                  double t_start, double t_end);
/* Copies the family into the schedule. */
HOLOQ_API holoq_status holoq_schedule_add_measurement(holoq_schedule* schedule,
                                                      double t_start, double t_end,
                                                      const holoq_family* family);

HOLOQ_API holoq_status holoq_run_schedule(const holoq_density* initial,
                                          const holoq_schedule* schedule, uint64_t seed,
                                          holoq_ledger** out);
HOLOQ_API void holoq_ledger_free(holoq_ledger* ledger);
HOLOQ_API holoq_status holoq_ledger_size(const holoq_ledger* ledger, size_t* out);
HOLOQ_API holoq_status holoq_ledger_n_duals(const holoq_ledger* ledger, size_t* out);

typedef struct holoq_phase_record {
  int regime;           /* 0 lorentzian, 1 euclidean */
  int kind;             /* 0 unitary, 1 post_nonselective, 2 post_read, 3 dual */
  double entropy_bits;
  double information_bits;
  double span_start;
  double span_end;
  int partial;          /* degenerate read left entropy behind */
  int dual_of;          /* annotated record index; -1 for Lorentzian records */
} holoq_phase_record;

HOLOQ_API holoq_status holoq_ledger_record(const holoq_ledger* ledger, size_t index,
                                           holoq_phase_record* out);
HOLOQ_API holoq_status holoq_attach_duals(const holoq_ledger* ledger, double a_tn_bits,
                                          double mass, double hbar, size_t n_steps,
                                          uint64_t seed, holoq_ledger** out);
HOLOQ_API holoq_status holoq_ledger_to_json(const holoq_ledger* ledger, char** out);

/* ---- classicalized network ------------------------------------------ */

HOLOQ_API holoq_status holoq_mera_build(size_t n_leaves, holoq_mera** out);
HOLOQ_API void holoq_mera_free(holoq_mera* mera);
HOLOQ_API holoq_status holoq_mera_n_sites(const holoq_mera* mera, size_t* out);
HOLOQ_API holoq_status holoq_mera_n_bonds(const holoq_mera* mera, size_t* out);
HOLOQ_API holoq_status holoq_mera_n_layers(const holoq_mera* mera, size_t* out);
HOLOQ_API holoq_status holoq_mera_to_json(const holoq_mera* mera, char** out);
/* Minimum bond cut separating boundary interval [begin, end). */
HOLOQ_API holoq_status holoq_minimal_cut(const holoq_mera* mera, size_t begin,
                                         size_t end, size_t* out);

HOLOQ_API holoq_status holoq_classicalize(const holoq_mera* mera, holoq_hologram** out);
HOLOQ_API void holoq_hologram_free(holoq_hologram* hologram);
HOLOQ_API holoq_status holoq_hologram_a_tn(const holoq_hologram* hologram, size_t* out);
HOLOQ_API holoq_status holoq_hologram_entropy_bits(const holoq_hologram* hologram,
                                                   double* out);

typedef struct holoq_spin_event {
  size_t site;
  int spin; /* +1 or -1 */
} holoq_spin_event;

HOLOQ_API holoq_status holoq_readout_spin_events(const holoq_hologram* hologram,
                                                 size_t n_events, uint64_t seed,
                                                 holoq_spin_event* buffer,
                                                 size_t buffer_len);
HOLOQ_API holoq_status holoq_events_from_information(double information_bits,
                                                     size_t* n_events,
                                                     double* remainder_bits);

/* ---- generic entropy helpers ---------------------------------------- */

HOLOQ_API holoq_status holoq_shannon_entropy_bits(const double* p, size_t n,
                                                  double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HOLOQ_H */
