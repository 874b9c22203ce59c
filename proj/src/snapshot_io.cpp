#include "hydro/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "hydro/errors.hpp"

namespace hydro {
namespace {

constexpr std::array<char, 8> kMagic = {'H', 'Y', 'S', 'N', 'A', 'P', '0', '1'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v) {
    std::array<unsigned char, 4> b{};
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out_.write(reinterpret_cast<const char*>(b.data()), b.size());
  }
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<unsigned char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out_.write(reinterpret_cast<const char*>(b.data()), b.size());
  }
  void bytes(const char* data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::uint32_t u32() {
    std::array<unsigned char, 4> b{};
    read(b.data(), b.size());
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint8_t u8() {
    unsigned char b = 0;
    read(&b, 1);
    return b;
  }
  double f64() {
    std::array<unsigned char, 8> b{};
    read(b.data(), b.size());
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  void read(void* dst, std::size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (!in_) throw Error(ErrorCode::IoError, source_ + ": truncated snapshot");
  }

 private:
  std::istream& in_;
  std::string source_;
};

std::uint8_t encode(Parity p) {
  switch (p) {
    case Parity::EvenInZ: return 0;
    case Parity::OddInZ: return 1;
    case Parity::None: return 2;
  }
  return 2;
}

Parity decode(std::uint8_t code, const std::string& source) {
  switch (code) {
    case 0: return Parity::EvenInZ;
    case 1: return Parity::OddInZ;
    case 2: return Parity::None;
    default:
      throw Error(ErrorCode::IoError, source + ": bad parity tag");
  }
}

}  // namespace

const SpectralField& Snapshot::get(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return f.field;
  throw Error(ErrorCode::InvalidArgument, "snapshot has no field '" + name + "'");
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot) {
  if (snapshot.fields.empty()) {
    throw Error(ErrorCode::InvalidArgument, "snapshot without fields");
  }
  const Grid& grid = snapshot.fields.front().field.grid();
  for (const auto& f : snapshot.fields) {
    if (!(f.field.grid() == grid)) {
      throw Error(ErrorCode::GridMismatch, "snapshot fields on different grids");
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  Writer w(out);
  w.bytes(kMagic.data(), kMagic.size());
  w.u32(static_cast<std::uint32_t>(grid.nx()));
  w.u32(static_cast<std::uint32_t>(grid.ny()));
  w.u32(static_cast<std::uint32_t>(grid.nz()));
  w.f64(snapshot.time);
  w.u32(static_cast<std::uint32_t>(snapshot.fields.size()));
  for (const auto& f : snapshot.fields) {
    w.u32(static_cast<std::uint32_t>(f.name.size()));
    w.bytes(f.name.data(), f.name.size());
    w.u8(encode(f.field.parity()));
    for (const auto& c : f.field.coeffs()) {
      w.f64(c.real());
      w.f64(c.imag());
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  const std::string source = path.string();
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + source);
  Reader r(in, source);
  std::array<char, 8> magic{};
  r.read(magic.data(), magic.size());
  if (magic != kMagic) throw Error(ErrorCode::IoError, source + ": not a snapshot file");

  const int nx = static_cast<int>(r.u32());
  const int ny = static_cast<int>(r.u32());
  const int nz = static_cast<int>(r.u32());
  const Grid grid(nx, ny, nz);
  Snapshot snap;
  snap.time = r.f64();
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t len = r.u32();
    if (len > 256) throw Error(ErrorCode::IoError, source + ": bad field name length");
    std::string name(len, '\0');
    r.read(name.data(), len);
    SpectralField field(grid, decode(r.u8(), source));
    for (auto& c : field.coeffs()) {
      const double re = r.f64();
      const double im = r.f64();
      c = Complex(re, im);
    }
    snap.fields.push_back({std::move(name), std::move(field)});
  }
  return snap;
}

}  // namespace hydro
