#include "ferris/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ferris/errors.hpp"
#include "ferris/field_io.hpp"

namespace ferris {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir)) throw_io("cannot create output directory " + dir.string());
}

bool want_pgm(const RunConfig& cfg) { return cfg.format == "csv+pgm"; }
bool want_png(const RunConfig& cfg) { return cfg.format == "csv+png"; }

void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "csv+pgm" && cfg.format != "csv+png")
    throw_config("output: format must be csv, csv+pgm or csv+png (got '" + cfg.format + "')");
}

void render(const RunConfig& cfg, const RealField2D& field, const fs::path& base) {
  if (want_pgm(cfg)) write_pgm16(field, fs::path(base) += ".pgm", cfg.render_gamma);
  if (want_png(cfg)) write_png8(field, fs::path(base) += ".png", cfg.colormap, cfg.render_gamma);
}

// text reports go through the same atomic temp-file discipline as fields
void write_text(const fs::path& path, const std::string& text) {
  const fs::path part = fs::path(path.string() + ".part");
  {
    std::ofstream os(part, std::ios::binary | std::ios::trunc);
    if (!os) throw_io("cannot open " + part.string());
    os << text;
    if (!os) throw_io("write failed for " + part.string());
  }
  std::error_code ec;
  fs::rename(part, path, ec);
  if (ec) throw_io("cannot rename " + part.string());
}

}  // namespace

std::string config_echo(const RunConfig& cfg) {
  std::ostringstream os;
  os << "ell=" << cfg.ell << " p=" << cfg.p << " w0=" << fmt(cfg.lg_w0)
     << " lambda=" << fmt(cfg.lg_lambda) << " P_lg=" << fmt(cfg.lg_power)
     << " P_g=" << fmt(cfg.g_power) << " lens_n=" << fmt(cfg.lens_n)
     << " lens_d=" << fmt(cfg.lens_d) << " lens_f=" << fmt(cfg.lens_f)
     << " sigma=" << fmt(cfg.packet_sigma) << " k_dB=" << fmt(cfg.packet_k_dB)
     << " gamma=" << fmt(cfg.atom_gamma) << " omega_g0=" << fmt(cfg.omega_g0)
     << " omega_gl0=" << fmt(cfg.omega_gl0) << " detuning=" << fmt(cfg.detuning)
     << " tau=" << fmt(cfg.tau);
  return os.str();
}

fs::path run_mask(const RunConfig& cfg, const fs::path& out_dir, const std::string& basename) {
  check_format(cfg);
  ensure_dir(out_dir);
  const GridSpec grid = cfg.grid();
  const RealField2D intensity =
      cfg.mask_z == 0.0
          ? mask_intensity_focus(cfg.lg(), cfg.gauss(), cfg.lens(), grid, cfg.saturation_units,
                                 cfg.atom_I_sat)
          : mask_intensity(cfg.lg(), cfg.gauss(), cfg.lens(), grid, cfg.mask_z,
                           cfg.saturation_units, cfg.atom_I_sat);
  const fs::path csv = out_dir / (basename + ".csv");
  write_field(intensity, csv, config_echo(cfg) + " z=" + fmt(cfg.mask_z));
  render(cfg, intensity, out_dir / basename);
  return csv;
}

fs::path run_potential(const RunConfig& cfg, const fs::path& out_dir) {
  check_format(cfg);
  ensure_dir(out_dir);
  const RabiConfig rabi = cfg.rabi();
  const GridSpec grid = cfg.grid();
  RealField2D u = make_real_field(grid, "dipole_potential", "J");
  detail::parallel_for_rows(grid.ny, [&](int j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double r = std::hypot(x, y);
      double phi = std::atan2(y, x);
      if (phi < 0.0) phi += 2.0 * M_PI;
      u.at(i, j) = dipole_potential(rabi, r, phi);
    }
  });
  const fs::path csv = out_dir / "potential.csv";
  write_field(u, csv, config_echo(cfg));
  render(cfg, u, out_dir / "potential");
  return csv;
}

fs::path run_imprint(const RunConfig& cfg, const fs::path& out_dir) {
  check_format(cfg);
  ensure_dir(out_dir);
  const ComplexField2D psi0 = initial_packet(cfg.packet(), cfg.grid());
  const ComplexField2D psi = phase_imprint(psi0, cfg.rabi(), cfg.tau_seconds());
  const fs::path csv = out_dir / "imprint.csv";
  write_field(psi, csv, config_echo(cfg));
  return csv;
}

fs::path run_orders(const RunConfig& cfg, const fs::path& out_dir, int max_field_order) {
  check_format(cfg);
  ensure_dir(out_dir);
  const ComplexField2D psi0 = initial_packet(cfg.packet(), cfg.grid());
  const ImprintParams params = cfg.imprint();
  const auto orders = decompose_orders(psi0, params);

  std::ostringstream table;
  table << "# diffraction order populations P_m = integral |psi0|^2 J_m^2(E tau) dA\n";
  table << "m,helicity,population\n";
  double total = 0.0;
  for (const auto& o : orders) {
    const double pm = order_weight(psi0, params, o.m);
    total += pm;
    table << o.m << ',' << o.helicity << ',' << fmt(pm) << '\n';
    if (std::abs(o.m) <= max_field_order) {
      std::ostringstream name;
      name << "order_m" << (o.m >= 0 ? "+" : "") << o.m << ".csv";
      write_field(o.field, out_dir / name.str(), config_echo(cfg));
    }
  }
  table << "# sum=" << fmt(total) << '\n';
  const fs::path tab = out_dir / "orders_populations.txt";
  write_text(tab, table.str());
  return tab;
}

fs::path run_ferris(const RunConfig& cfg, const fs::path& out_dir, const std::string& basename) {
  check_format(cfg);
  ensure_dir(out_dir);
  if (cfg.ferris_m == 0) throw_config("ferris: m must be nonzero");
  const RealField2D density = ferris_density(cfg.imprint(), cfg.packet(), cfg.ferris_m, cfg.grid());
  std::ostringstream name;
  name << basename << "_m" << std::abs(cfg.ferris_m);
  const fs::path csv = out_dir / (name.str() + ".csv");
  write_field(density, csv, config_echo(cfg) + " m=" + std::to_string(cfg.ferris_m));
  render(cfg, density, out_dir / name.str());
  return csv;
}

fs::path run_propagate(const RunConfig& cfg, const fs::path& out_dir) {
  check_format(cfg);
  ensure_dir(out_dir);
  const ComplexField2D psi0 = initial_packet(cfg.packet(), cfg.grid());
  const ImprintParams params = cfg.imprint();
  const PropagationPlan plan = cfg.plan();
  auto orders = decompose_orders(psi0, params);

  const double k_opt = params.cfg.wavenumber();
  std::ostringstream report;
  std::ostringstream scan_csv;
  report.setf(std::ios::scientific);
  report.precision(6);
  report << "Focal scan report\n"
         << "K_dB = " << cfg.packet_k_dB << " 1/m, optical k = " << k_opt
         << " 1/m, f = " << cfg.lens_f << " m\n"
         << "geometric law: z_geo(m) = (K_dB/k) f / m\n\n";
  scan_csv << "order,z,rms_radius\n";

  for (int m : cfg.scan_orders) {
    const DiffractionOrder* ord = nullptr;
    for (const auto& o : orders)
      if (o.m == m) ord = &o;
    if (ord == nullptr) {
      report << "order m=" << m << ": outside the decomposition range, skipped\n\n";
      continue;
    }
    const FocusScan scan = find_focus(ord->field, plan.K, plan);
    for (const auto& [z, rms] : scan.samples)
      scan_csv << m << ',' << fmt(z) << ',' << fmt(rms) << '\n';
    const double z_geo = m != 0 ? plan.K * cfg.lens_f / (m * k_opt) : 0.0;
    report << "order m=" << m << " (helicity " << ord->helicity << ")\n";
    if (m != 0) report << "  z_geo predicted       = " << z_geo << " m\n";
    if (scan.found) {
      report << "  z_focus measured      = " << scan.z_focus << " m\n"
             << "  rms radius at focus   = " << scan.rms_at_focus << " m\n";
      if (m != 0)
        report << "  z_focus / z_geo       = " << scan.z_focus / z_geo << "\n";
    } else {
      report << "  no interior minimum: " << scan.note << "\n";
    }
    report << "\n";
  }

  write_text(out_dir / "propagate_scan.csv", scan_csv.str());
  const fs::path rep = out_dir / "propagate_report.txt";
  write_text(rep, report.str());
  return rep;
}

fs::path run_validate(const RunConfig& cfg, const fs::path& out_dir) {
  ensure_dir(out_dir);
  const RamanNathReport rep = raman_nath_report(cfg.rabi(), cfg.atom(), cfg.packet());
  const fs::path path = out_dir / "validate_report.txt";
  write_text(path, rep.to_text());
  std::cout << rep.to_text();
  return path;
}

fs::path run_figure(const std::string& which, RunConfig cfg, const fs::path& out_dir) {
  if (which == "fig1") return run_mask(cfg, out_dir, "fig1");
  if (which == "fig3") {
    cfg.ferris_m = 1;
    return run_ferris(cfg, out_dir, "fig3");
  }
  if (which == "fig4") {
    cfg.ferris_m = 2;
    return run_ferris(cfg, out_dir, "fig4");
  }
  throw_config("figure: expected fig1, fig3 or fig4 (got '" + which + "')");
}

}  // namespace ferris
