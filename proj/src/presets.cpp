#include "ferris/config.hpp"

#include <map>

#include "ferris/errors.hpp"

namespace ferris {

namespace {

// The same text is committed under presets/; a unit test keeps them in sync.

const std::string kFig1 = R"ini(# Spiral light mask (two-armed), interference of an ell = 2 LG beam with a
# lensed Gaussian. Both beams: w0 = 180 um, lambda = 589.16 nm, P = 2.8 mW.
# Intensity is rendered in saturation-intensity units, I_sat = 10.9 W/m^2.
# gamma below is 2 pi x 5.22 MHz; gamma, mass and I_sat are external physical
# constants, not derived by the simulator.

[grid]
nx = 512
ny = 512
half_extent_x = 300e-6
half_extent_y = 300e-6

[lg_beam]
ell = 2
p = 0
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[gaussian_beam]
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[lens]
n = 1.5
d = 8e-3
f = 8e-3

[atom]
lambda0 = 589.16e-9
gamma = 3.279822730347744e7
mass = 2.2069e-25
I_sat = 10.9

[packet]
sigma = 100e-6
k_dB = 2.0926976849031422e7

[rabi]
omega_g0 = 10
omega_gl0 = 10
detuning = 100
tau = 0.5

[output]
z = 0
saturation_units = true
format = csv+pgm
gamma = 1.0
)ini";

const std::string kFig3 = R"ini(# Ferris wheel density for the m = +-1 order pair (4 petals with ell = 2).
# Packet FWHM sigma = 100 um, tau = 0.5/Gamma, Omega_G0 = Omega_GL0 = 10 Gamma,
# Delta = 100 Gamma; mask as in the fig1 preset.

[grid]
nx = 512
ny = 512
half_extent_x = 200e-6
half_extent_y = 200e-6

[lg_beam]
ell = 2
p = 0
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[gaussian_beam]
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[lens]
n = 1.5
d = 8e-3
f = 8e-3

[atom]
lambda0 = 589.16e-9
gamma = 3.279822730347744e7
mass = 2.2069e-25
I_sat = 10.9

[packet]
sigma = 100e-6
k_dB = 2.0926976849031422e7

[rabi]
omega_g0 = 10
omega_gl0 = 10
detuning = 100
tau = 0.5

[output]
m = 1
format = csv+pgm
gamma = 1.0
)ini";

const std::string kFig4 = R"ini(# Ferris wheel density for the m = +-2 order pair (8 petals with ell = 2).
# Same physics as the fig3 preset, one diffraction order further out.

[grid]
nx = 512
ny = 512
half_extent_x = 200e-6
half_extent_y = 200e-6

[lg_beam]
ell = 2
p = 0
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[gaussian_beam]
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[lens]
n = 1.5
d = 8e-3
f = 8e-3

[atom]
lambda0 = 589.16e-9
gamma = 3.279822730347744e7
mass = 2.2069e-25
I_sat = 10.9

[packet]
sigma = 100e-6
k_dB = 2.0926976849031422e7

[rabi]
omega_g0 = 10
omega_gl0 = 10
detuning = 100
tau = 0.5

[output]
m = 2
format = csv+pgm
gamma = 1.0
)ini";

const std::string kValidate = R"ini(# Raman-Nath validity report for the fig3 physics: packet width against the
# spiral mask structure, transverse kinetic energy against the interaction
# energy.

[grid]
nx = 512
ny = 512
half_extent_x = 200e-6
half_extent_y = 200e-6

[lg_beam]
ell = 2
p = 0
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[gaussian_beam]
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[lens]
n = 1.5
d = 8e-3
f = 8e-3

[atom]
lambda0 = 589.16e-9
gamma = 3.279822730347744e7
mass = 2.2069e-25
I_sat = 10.9

[packet]
sigma = 100e-6
k_dB = 2.0926976849031422e7

[rabi]
omega_g0 = 10
omega_gl0 = 10
detuning = 100
tau = 0.5

[output]
format = csv
)ini";

const std::string kPropagate = R"ini(# Focal scan of the diffraction orders. k_dB corresponds to a cold Cs-mass
# beam at about 1 cm/s; a wider packet (sigma = 250 um) keeps the orders well
# collimated so the scan brackets each geometric focus K f / (m k). The
# geometric focus of order m = +1 sits near z = 15.7 mm.

[grid]
nx = 256
ny = 256
half_extent_x = 0.64e-3
half_extent_y = 0.64e-3

[lg_beam]
ell = 2
p = 0
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[gaussian_beam]
w0 = 180e-6
lambda = 589.16e-9
power = 2.8e-3

[lens]
n = 1.5
d = 8e-3
f = 8e-3

[atom]
lambda0 = 589.16e-9
gamma = 3.279822730347744e7
mass = 2.2069e-25
I_sat = 10.9

[packet]
sigma = 250e-6
k_dB = 2.0926976849031422e7

[rabi]
omega_g0 = 10
omega_gl0 = 10
detuning = 100
tau = 0.5

[propagation]
z_start = 4e-3
z_end = 28e-3
n_planes = 41
apodization = 0.1
orders = 1,-1,2

[output]
format = csv
)ini";

const std::map<std::string, const std::string*>& preset_map() {
  static const std::map<std::string, const std::string*> m = {
      {"fig1", &kFig1}, {"fig3", &kFig3}, {"fig4", &kFig4},
      {"validate", &kValidate}, {"propagate", &kPropagate}};
  return m;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig3", "fig4", "validate", "propagate"};
  return names;
}

const std::string& preset_text(const std::string& name) {
  const auto& m = preset_map();
  auto it = m.find(name);
  if (it == m.end()) throw_config("unknown preset '" + name + "'");
  return *it->second;
}

RunConfig preset_config(const std::string& name) {
  return parse_config_text(preset_text(name), "preset:" + name);
}

}  // namespace ferris
