#include "ferris/field_io.hpp"

#include <zlib.h>

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ferris/errors.hpp"

namespace ferris {

namespace fs = std::filesystem;

namespace {

// Writes to "<path>.part", renames into place on commit, removes the part
// file otherwise so failed commands leave nothing behind.
class AtomicFile {
public:
  explicit AtomicFile(const fs::path& path) : final_(path), part_(path.string() + ".part") {
    stream_.open(part_, std::ios::binary | std::ios::trunc);
    if (!stream_) throw_io("cannot open " + part_.string() + " for writing");
  }
  ~AtomicFile() {
    if (!committed_) {
      stream_.close();
      std::error_code ec;
      fs::remove(part_, ec);
    }
  }
  std::ofstream& stream() { return stream_; }
  void commit() {
    stream_.flush();
    if (!stream_) throw_io("write failed for " + part_.string());
    stream_.close();
    std::error_code ec;
    fs::rename(part_, final_, ec);
    if (ec) throw_io("cannot rename " + part_.string() + " to " + final_.string());
    committed_ = true;
  }

private:
  fs::path final_;
  fs::path part_;
  std::ofstream stream_;
  bool committed_ = false;
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header(std::ofstream& os, const GridSpec& g, const std::string& kind,
                  const std::string& quantity, const std::string& units,
                  const std::string& params_echo) {
  os << "# ferris-field schema=1\n";
  os << "# kind=" << kind << "\n";
  os << "# nx=" << g.nx << "\n";
  os << "# ny=" << g.ny << "\n";
  os << "# half_extent_x=" << fmt17(g.half_extent_x) << "\n";
  os << "# half_extent_y=" << fmt17(g.half_extent_y) << "\n";
  os << "# quantity=" << quantity << "\n";
  os << "# units=" << units << "\n";
  os << "# params=" << params_echo << "\n";
  os << "# columns=" << (kind == "complex" ? "x,y,re,im" : "x,y,value") << "\n";
}

struct ParsedHeader {
  std::map<std::string, std::string> kv;
  int body_start_line = 0;
};

ParsedHeader parse_header(std::istream& is, const fs::path& path) {
  ParsedHeader h;
  std::string line;
  int lineno = 0;
  while (is.peek() == '#') {
    std::getline(is, line);
    ++lineno;
    std::string body = line.substr(1);
    const std::size_t start = body.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    body = body.substr(start);
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      // tolerate the banner token before "schema="
      const std::size_t sp = body.find(' ');
      if (sp != std::string::npos && body.find('=', sp) != std::string::npos) {
        const std::string rest = body.substr(sp + 1);
        const std::size_t eq2 = rest.find('=');
        h.kv[rest.substr(0, eq2)] = rest.substr(eq2 + 1);
      }
      continue;
    }
    // a line may carry the banner ("ferris-field schema=1")
    std::string key = body.substr(0, eq);
    const std::size_t sp = key.rfind(' ');
    if (sp != std::string::npos) key = key.substr(sp + 1);
    h.kv[key] = body.substr(eq + 1);
  }
  h.body_start_line = lineno + 1;
  if (!h.kv.count("nx") || !h.kv.count("ny") || !h.kv.count("half_extent_x") ||
      !h.kv.count("half_extent_y") || !h.kv.count("kind"))
    throw_io("malformed field header in " + path.string());
  return h;
}

double parse_double_strict(const std::string& s, const fs::path& path, int lineno) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw_io("parse error in " + path.string() + " line " + std::to_string(lineno) + ": '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

GridSpec spec_from_header(const ParsedHeader& h, const fs::path& path) {
  GridSpec g;
  g.nx = static_cast<int>(parse_double_strict(h.kv.at("nx"), path, 0));
  g.ny = static_cast<int>(parse_double_strict(h.kv.at("ny"), path, 0));
  g.half_extent_x = parse_double_strict(h.kv.at("half_extent_x"), path, 0);
  g.half_extent_y = parse_double_strict(h.kv.at("half_extent_y"), path, 0);
  g.validate();
  return g;
}

std::string header_value(const ParsedHeader& h, const std::string& key) {
  auto it = h.kv.find(key);
  return it == h.kv.end() ? std::string() : it->second;
}

}  // namespace

void write_field(const ComplexField2D& field, const fs::path& path, const std::string& params_echo) {
  AtomicFile file(path);
  std::ofstream& os = file.stream();
  write_header(os, field.spec, "complex", field.quantity, field.units, params_echo);
  const GridSpec& g = field.spec;
  for (int j = 0; j < g.ny; ++j) {
    const std::string ys = fmt17(g.y(j));
    for (int i = 0; i < g.nx; ++i) {
      const std::complex<double>& v = field.at(i, j);
      os << fmt17(g.x(i)) << ',' << ys << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    }
  }
  file.commit();
}

void write_field(const RealField2D& field, const fs::path& path, const std::string& params_echo) {
  AtomicFile file(path);
  std::ofstream& os = file.stream();
  write_header(os, field.spec, "real", field.quantity, field.units, params_echo);
  const GridSpec& g = field.spec;
  for (int j = 0; j < g.ny; ++j) {
    const std::string ys = fmt17(g.y(j));
    for (int i = 0; i < g.nx; ++i)
      os << fmt17(g.x(i)) << ',' << ys << ',' << fmt17(field.at(i, j)) << '\n';
  }
  file.commit();
}

ComplexField2D read_complex_field(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw_io("cannot open " + path.string());
  const ParsedHeader h = parse_header(is, path);
  if (h.kv.at("kind") != "complex") throw_io(path.string() + ": expected a complex field file");
  ComplexField2D f = make_complex_field(spec_from_header(h, path), header_value(h, "quantity"),
                                        header_value(h, "units"));
  std::string line;
  int lineno = h.body_start_line;
  for (std::size_t n = 0; n < f.values.size(); ++n, ++lineno) {
    if (!std::getline(is, line))
      throw_io(path.string() + ": truncated at line " + std::to_string(lineno));
    const auto cols = split_csv(line);
    if (cols.size() != 4)
      throw_io(path.string() + " line " + std::to_string(lineno) + ": expected 4 columns");
    f.values[n] = {parse_double_strict(cols[2], path, lineno),
                   parse_double_strict(cols[3], path, lineno)};
  }
  return f;
}

RealField2D read_real_field(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw_io("cannot open " + path.string());
  const ParsedHeader h = parse_header(is, path);
  if (h.kv.at("kind") != "real") throw_io(path.string() + ": expected a real field file");
  RealField2D f = make_real_field(spec_from_header(h, path), header_value(h, "quantity"),
                                  header_value(h, "units"));
  std::string line;
  int lineno = h.body_start_line;
  for (std::size_t n = 0; n < f.values.size(); ++n, ++lineno) {
    if (!std::getline(is, line))
      throw_io(path.string() + ": truncated at line " + std::to_string(lineno));
    const auto cols = split_csv(line);
    if (cols.size() != 3)
      throw_io(path.string() + " line " + std::to_string(lineno) + ": expected 3 columns");
    f.values[n] = parse_double_strict(cols[2], path, lineno);
  }
  return f;
}

namespace {

// min-max normalisation then gamma; returns values in [0, 1], or all 0.5 on a
// degenerate range (with a warning).
std::vector<double> normalised(const RealField2D& field, double gamma) {
  double lo = field.values.empty() ? 0.0 : field.values[0];
  double hi = lo;
  for (double v : field.values) {
    if (!std::isfinite(v)) throw_numeric("render_image: non-finite value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(field.values.size(), 0.5);
  if (hi == lo) {
    warn("render_image: degenerate value range, rendering uniform mid-gray");
    return out;
  }
  const double inv = 1.0 / (hi - lo);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::pow((field.values[i] - lo) * inv, gamma);
  return out;
}

// fixed control points, linearly interpolated (compact stand-in for the usual
// perceptual map)
const std::array<std::array<double, 3>, 8> kInferno = {{{0.001, 0.000, 0.014},
                                                        {0.124, 0.047, 0.283},
                                                        {0.341, 0.062, 0.429},
                                                        {0.551, 0.133, 0.406},
                                                        {0.752, 0.227, 0.306},
                                                        {0.906, 0.372, 0.158},
                                                        {0.976, 0.590, 0.039},
                                                        {0.988, 0.998, 0.645}}};

std::array<unsigned char, 3> colormap_rgb(const std::string& name, double t) {
  if (name == "gray") {
    const auto v = static_cast<unsigned char>(std::lround(t * 255.0));
    return {v, v, v};
  }
  const double u = t * (kInferno.size() - 1);
  const std::size_t k = std::min(static_cast<std::size_t>(u), kInferno.size() - 2);
  const double s = u - k;
  std::array<unsigned char, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    const double v = kInferno[k][static_cast<std::size_t>(c)] * (1.0 - s) +
                     kInferno[k + 1][static_cast<std::size_t>(c)] * s;
    rgb[static_cast<std::size_t>(c)] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  return rgb;
}

void put_u32_be(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>((v >> 24) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>(v & 0xff));
}

void write_png_chunk(std::ofstream& os, const char type[4], const std::string& data) {
  std::string out;
  put_u32_be(out, static_cast<std::uint32_t>(data.size()));
  out.append(type, 4);
  out += data;
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data() + 4),
                         static_cast<uInt>(out.size() - 4));
  put_u32_be(out, static_cast<std::uint32_t>(crc));
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace

void write_pgm16(const RealField2D& field, const fs::path& path, double gamma) {
  const auto t = normalised(field, gamma);
  const GridSpec& g = field.spec;
  AtomicFile file(path);
  std::ofstream& os = file.stream();
  os << "P5\n" << g.nx << " " << g.ny << "\n65535\n";
  std::string row(static_cast<std::size_t>(g.nx) * 2, '\0');
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      const double v = t[static_cast<std::size_t>(j) * g.nx + i];
      const auto pix = static_cast<std::uint16_t>(std::lround(v * 65535.0));
      row[static_cast<std::size_t>(i) * 2] = static_cast<char>((pix >> 8) & 0xff);
      row[static_cast<std::size_t>(i) * 2 + 1] = static_cast<char>(pix & 0xff);
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  file.commit();
}

void write_png8(const RealField2D& field, const fs::path& path, const std::string& colormap,
                double gamma) {
  if (colormap != "gray" && colormap != "inferno")
    throw_config("render_image: unknown colormap '" + colormap + "'");
  const auto t = normalised(field, gamma);
  const GridSpec& g = field.spec;

  // raw scanlines: filter byte 0 + RGB triples, top row = largest y
  std::string raw;
  raw.reserve(static_cast<std::size_t>(g.ny) * (1 + 3 * static_cast<std::size_t>(g.nx)));
  for (int j = g.ny - 1; j >= 0; --j) {
    raw.push_back('\0');
    for (int i = 0; i < g.nx; ++i) {
      const auto rgb = colormap_rgb(colormap, t[static_cast<std::size_t>(j) * g.nx + i]);
      raw.push_back(static_cast<char>(rgb[0]));
      raw.push_back(static_cast<char>(rgb[1]));
      raw.push_back(static_cast<char>(rgb[2]));
    }
  }

  uLongf comp_size = compressBound(static_cast<uLong>(raw.size()));
  std::string compressed(comp_size, '\0');
  if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &comp_size,
                reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                6) != Z_OK)
    throw_io("png: zlib compression failed");
  compressed.resize(comp_size);

  AtomicFile file(path);
  std::ofstream& os = file.stream();
  static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  os.write(reinterpret_cast<const char*>(sig), 8);
  std::string ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(g.nx));
  put_u32_be(ihdr, static_cast<std::uint32_t>(g.ny));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // color type: truecolor
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // interlace
  write_png_chunk(os, "IHDR", ihdr);
  write_png_chunk(os, "IDAT", compressed);
  write_png_chunk(os, "IEND", "");
  file.commit();
}

}  // namespace ferris
