#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nlwave/state.hpp"

namespace nlwave {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Binary field format: magic "NLWFLD01", uint32 little-endian n, then n^3
/// coefficients as little-endian f64 (re, im) pairs in row-major transform
/// index order. A state file uses magic "NLWSTA01" followed by the u block
/// and the v block (each n^3 pairs, same layout, one shared n).
void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);

void save_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField load_field(const std::filesystem::path& path);

void save_state(const std::filesystem::path& path, const State& U);
State load_state(const std::filesystem::path& path);

/// Whole-file text write used for CSV/JSON/SVG artifacts.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nlwave
