#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ferris/atom_light.hpp"
#include "ferris/diffraction.hpp"
#include "ferris/grid.hpp"
#include "ferris/optics.hpp"
#include "ferris/propagation.hpp"
#include "ferris/wave_packet.hpp"

namespace ferris {

// Flat INI-style run configuration: [section] plus scalar key = value lines.
// Unknown sections or keys are errors. Paper-style scaled inputs are accepted
// directly: Rabi frequencies and detunings in units of Gamma, times in units
// of 1/Gamma. Precedence: file < FERRIS_<SECTION>_<KEY> environment overrides
// < command-line flags.
struct RunConfig {
  // [grid]
  int nx = 512;
  int ny = 512;
  double half_extent_x = 200e-6;
  double half_extent_y = 200e-6;

  // [lg_beam]
  int ell = 2;
  int p = 0;
  double lg_w0 = 180e-6;
  double lg_lambda = 589.16e-9;
  double lg_power = 2.8e-3;
  double lg_amplitude = -1.0;

  // [gaussian_beam]
  double g_w0 = 180e-6;
  double g_lambda = 589.16e-9;
  double g_power = 2.8e-3;
  double g_amplitude = -1.0;

  // [lens]
  double lens_n = 1.5;
  double lens_d = 8e-3;
  double lens_f = 8e-3;

  // [atom]
  double atom_lambda0 = 589.16e-9;
  double atom_gamma = 3.279822730347744e7;  // rad/s
  double atom_mass = 2.2069e-25;             // kg
  double atom_I_sat = 10.9;                  // W/m^2

  // [packet]
  double packet_sigma = 100e-6;
  double packet_k_dB = 2.0926976849031422e7;

  // [rabi] (Gamma-scaled)
  double omega_g0 = 10.0;
  double omega_gl0 = 10.0;
  double detuning = 100.0;
  double tau = 0.5;  // units of 1/Gamma

  // [propagation]
  double z_start = 4e-3;
  double z_end = 28e-3;
  int n_planes = 41;
  double apodization = 0.1;
  std::vector<int> scan_orders = {1, -1, 2};

  // [second_imprint]
  std::string imprint_mode = "ideal";  // ideal | physical
  int s = 1;
  double delta0 = 100.0;        // Gamma units
  double omega_prime0 = 10.0;   // Gamma units
  double dt = 0.5;              // 1/Gamma units
  double r_core = 0.0;          // m; 0 selects one grid spacing

  // [output]
  std::string format = "csv+pgm";  // csv | csv+pgm | csv+png
  double render_gamma = 1.0;
  std::string colormap = "inferno";
  double mask_z = 0.0;
  bool saturation_units = false;
  int ferris_m = 1;

  // assembled domain objects
  GridSpec grid() const;
  LGBeamParams lg() const;
  GaussianBeamParams gauss() const;
  ThinLens lens() const;
  TwoLevelAtom atom() const;
  WavePacket packet() const;
  RabiConfig rabi() const;
  double tau_seconds() const { return tau / atom_gamma; }
  double dt_seconds() const { return dt / atom_gamma; }
  ImprintParams imprint() const;
  PropagationPlan plan() const;
};

// Parses INI text; `source` names the origin for error messages.
RunConfig parse_config_text(const std::string& text, const std::string& source,
                            RunConfig base = RunConfig{});
RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base = RunConfig{});

// Applies FERRIS_<SECTION>_<KEY> environment overrides to every known key.
void apply_env_overrides(RunConfig& cfg);

// Built-in presets; the same text is committed under presets/.
const std::vector<std::string>& preset_names();
const std::string& preset_text(const std::string& name);
RunConfig preset_config(const std::string& name);

}  // namespace ferris
