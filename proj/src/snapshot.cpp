#include "starknls/snapshot.hpp"

#include "starknls/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts unsupported");

namespace starknls {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw FormatError("snapshot: truncated file");
  return v;
}

double get_f64(std::istream& is) {
  double v = 0.0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw FormatError("snapshot: truncated file");
  return v;
}

}  // namespace

void write_snapshot(const Field& f, const std::filesystem::path& path, double epsilon) {
  validate(f);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("snapshot: cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  const Grid& g = *f.grid;
  put_u32(os, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put_u32(os, static_cast<std::uint32_t>(g.points(a)));
  for (int a = 0; a < g.dim(); ++a) put_f64(os, g.length(a));
  put_f64(os, f.time_tag.value_or(0.0));
  put_f64(os, epsilon);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(Complex)));
  if (!os) throw FormatError("snapshot: write failure on " + path.string());
}

Field read_snapshot(const std::filesystem::path& path, double* epsilon_out) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("snapshot: cannot open " + path.string());
  char magic[4] = {};
  if (!is.read(magic, 4)) throw FormatError("snapshot: truncated file");
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("snapshot: bad magic");
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw FormatError("snapshot: unsupported format version " + std::to_string(version));
  const std::uint32_t dim = get_u32(is);
  if (dim != 1 && dim != 2) throw FormatError("snapshot: dimension must be 1 or 2");
  std::array<int, 2> points{1, 1};
  for (std::uint32_t a = 0; a < dim; ++a) points[a] = static_cast<int>(get_u32(is));
  std::array<double, 2> lengths{1.0, 1.0};
  for (std::uint32_t a = 0; a < dim; ++a) lengths[a] = get_f64(is);
  const double t = get_f64(is);
  const double epsilon = get_f64(is);

  GridPtr g;
  try {
    g = make_grid(static_cast<int>(dim), points, lengths);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("snapshot: invalid grid header: ") + e.what());
  }
  Field f(g, std::vector<Complex>(g->size()), t);
  if (!is.read(reinterpret_cast<char*>(f.values.data()),
               static_cast<std::streamsize>(f.values.size() * sizeof(Complex))))
    throw FormatError("snapshot: truncated file");
  if (!all_finite(f)) throw FormatError("snapshot: non-finite samples");
  if (epsilon_out) *epsilon_out = epsilon;
  return f;
}

Field read_snapshot(const std::filesystem::path& path, const Grid& expected,
                    double* epsilon_out) {
  Field f = read_snapshot(path, epsilon_out);
  if (!f.grid->same_layout(expected))
    throw FormatError("snapshot: grid mismatch between file and target grid");
  return f;
}

}  // namespace starknls
