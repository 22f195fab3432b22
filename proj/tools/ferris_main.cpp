#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <filesystem>
#include <string>

#include "ferris/commands.hpp"
#include "ferris/config.hpp"
#include "ferris/errors.hpp"
#include "ferris/grid.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  int grid_n = 0;       // 0: keep config value
  double extent = 0.0;  // 0: keep config value
  std::string format;
  double render_gamma = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (INI key = value sections)");
  cmd->add_option("--preset", opts.preset, "built-in preset: fig1, fig3, fig4, validate, propagate");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--grid", opts.grid_n, "square grid sample count (power of two)");
  cmd->add_option("--extent", opts.extent, "grid half extent in metres");
  cmd->add_option("--format", opts.format, "csv | csv+pgm | csv+png");
  cmd->add_option("--gamma", opts.render_gamma, "render gamma for images");
}

// file < env < flags
ferris::RunConfig resolve(const CommonOpts& opts, const std::string& default_preset) {
  ferris::RunConfig cfg;
  if (!opts.config_path.empty() && !opts.preset.empty())
    ferris::throw_config("--config and --preset are mutually exclusive");
  if (!opts.config_path.empty()) {
    cfg = ferris::parse_config_file(opts.config_path);
  } else {
    const std::string name = opts.preset.empty() ? default_preset : opts.preset;
    std::cout << "using preset '" << name << "'\n";
    cfg = ferris::preset_config(name);
  }
  ferris::apply_env_overrides(cfg);
  if (opts.grid_n > 0) {
    cfg.nx = opts.grid_n;
    cfg.ny = opts.grid_n;
  }
  if (opts.extent > 0.0) {
    cfg.half_extent_x = opts.extent;
    cfg.half_extent_y = opts.extent;
  }
  if (!opts.format.empty()) cfg.format = opts.format;
  if (opts.render_gamma > 0.0) cfg.render_gamma = opts.render_gamma;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomic Ferris wheel beam simulator"};
  app.require_subcommand(1);

  int threads = 1;
  if (const char* env = std::getenv("FERRIS_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker threads for grid sampling");

  CommonOpts mask_o, pot_o, imp_o, ord_o, fer_o, prop_o, val_o, fig_o;
  double mask_z = -1.0;
  int ferris_m = 0;
  int max_field_order = 2;
  std::string figure_name;

  auto* mask = app.add_subcommand("mask", "spiral mask intensity grid");
  add_common(mask, mask_o);
  mask->add_option("--z", mask_z, "evaluation plane in metres (default from config)");

  auto* pot = app.add_subcommand("potential", "optical dipole potential grid");
  add_common(pot, pot_o);

  auto* imp = app.add_subcommand("imprint", "phase-imprinted wavefunction");
  add_common(imp, imp_o);

  auto* ord = app.add_subcommand("orders", "diffraction orders and populations");
  add_common(ord, ord_o);
  ord->add_option("--max-field-order", max_field_order, "write order fields up to this |m|");

  auto* fer = app.add_subcommand("ferris", "Ferris wheel density for one order pair");
  add_common(fer, fer_o);
  fer->add_option("--m", ferris_m, "order index m (petal count is 2|m|ell)");

  auto* prop = app.add_subcommand("propagate", "focal scan of the diffraction orders");
  add_common(prop, prop_o);

  auto* val = app.add_subcommand("validate", "Raman-Nath validity report");
  add_common(val, val_o);

  auto* fig = app.add_subcommand("figure", "run a figure preset verbatim");
  add_common(fig, fig_o);
  fig->add_option("name", figure_name, "fig1, fig3 or fig4")->required();

  CLI11_PARSE(app, argc, argv);
  ferris::set_thread_count(threads);

  try {
    std::filesystem::path written;
    if (mask->parsed()) {
      auto cfg = resolve(mask_o, "fig1");
      if (mask_z >= 0.0) cfg.mask_z = mask_z;
      written = ferris::run_mask(cfg, mask_o.out_dir);
    } else if (pot->parsed()) {
      written = ferris::run_potential(resolve(pot_o, "fig3"), pot_o.out_dir);
    } else if (imp->parsed()) {
      written = ferris::run_imprint(resolve(imp_o, "fig3"), imp_o.out_dir);
    } else if (ord->parsed()) {
      written = ferris::run_orders(resolve(ord_o, "fig3"), ord_o.out_dir, max_field_order);
    } else if (fer->parsed()) {
      auto cfg = resolve(fer_o, "fig3");
      if (ferris_m != 0) cfg.ferris_m = ferris_m;
      written = ferris::run_ferris(cfg, fer_o.out_dir);
    } else if (prop->parsed()) {
      written = ferris::run_propagate(resolve(prop_o, "propagate"), prop_o.out_dir);
    } else if (val->parsed()) {
      written = ferris::run_validate(resolve(val_o, "validate"), val_o.out_dir);
    } else if (fig->parsed()) {
      auto cfg = resolve(fig_o, figure_name);
      written = ferris::run_figure(figure_name, cfg, fig_o.out_dir);
    }
    std::cout << "wrote " << written.string() << "\n";
  } catch (const ferris::Error& e) {
    std::cerr << "ferris: error: " << e.what() << "\n";
    switch (e.kind()) {
      case ferris::Error::Kind::config: return 2;
      case ferris::Error::Kind::numeric: return 3;
      case ferris::Error::Kind::io: return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ferris: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
