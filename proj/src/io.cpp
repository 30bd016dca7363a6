#include "nlwave/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace nlwave {

// The on-disk layout is little-endian f64; writing raw doubles is only
// correct on a matching host.
static_assert(std::endian::native == std::endian::little,
              "binary field I/O assumes a little-endian host");

namespace {

constexpr char kFieldMagic[8] = {'N', 'L', 'W', 'F', 'L', 'D', '0', '1'};
constexpr char kStateMagic[8] = {'N', 'L', 'W', 'S', 'T', 'A', '0', '1'};

void write_header(std::ostream& os, const char magic[8], int n) {
  os.write(magic, 8);
  const std::uint32_t n32 = static_cast<std::uint32_t>(n);
  os.write(reinterpret_cast<const char*>(&n32), sizeof(n32));
}

int read_header(std::istream& is, const char magic[8], const char* what) {
  char got[8];
  is.read(got, 8);
  if (!is || std::memcmp(got, magic, 8) != 0) {
    throw IoError(std::string(what) + ": bad magic");
  }
  std::uint32_t n32 = 0;
  is.read(reinterpret_cast<char*>(&n32), sizeof(n32));
  if (!is || n32 < 4 || n32 % 2 != 0 || n32 > (1u << 16)) {
    throw IoError(std::string(what) + ": bad grid size");
  }
  return static_cast<int>(n32);
}

void write_coeffs(std::ostream& os, const SpectralField& f) {
  os.write(reinterpret_cast<const char*>(f.coeffs.data()),
           static_cast<std::streamsize>(f.coeffs.size() * sizeof(cdouble)));
}

void read_coeffs(std::istream& is, SpectralField& f, const char* what) {
  is.read(reinterpret_cast<char*>(f.coeffs.data()),
          static_cast<std::streamsize>(f.coeffs.size() * sizeof(cdouble)));
  if (!is) {
    throw IoError(std::string(what) + ": truncated coefficient block");
  }
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  write_header(os, kFieldMagic, f.grid.n);
  write_coeffs(os, f);
  if (!os) throw IoError("write_field: stream failure");
}

SpectralField read_field(std::istream& is) {
  const int n = read_header(is, kFieldMagic, "read_field");
  SpectralField f{TorusGrid{n}};
  read_coeffs(is, f, "read_field");
  return f;
}

void save_field(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("save_field: cannot open " + path.string());
  write_field(os, f);
  os.flush();
  if (!os) throw IoError("save_field: write failure on " + path.string());
}

SpectralField load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_field: cannot open " + path.string());
  return read_field(is);
}

void save_state(const std::filesystem::path& path, const State& U) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("save_state: cannot open " + path.string());
  write_header(os, kStateMagic, U.grid().n);
  write_coeffs(os, U.u);
  write_coeffs(os, U.v);
  os.flush();
  if (!os) throw IoError("save_state: write failure on " + path.string());
}

State load_state(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_state: cannot open " + path.string());
  const int n = read_header(is, kStateMagic, "load_state");
  SpectralField u{TorusGrid{n}};
  SpectralField v{TorusGrid{n}};
  read_coeffs(is, u, "load_state");
  read_coeffs(is, v, "load_state");
  return State{std::move(u), std::move(v)};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("write_text_file: cannot create " + path.parent_path().string());
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("write_text_file: cannot open " + path.string());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.flush();
  if (!os) throw IoError("write_text_file: write failure on " + path.string());
}

}  // namespace nlwave
