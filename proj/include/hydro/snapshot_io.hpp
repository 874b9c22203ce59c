#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hydro/spectral_field.hpp"

namespace hydro {

struct NamedField {
  std::string name;
  SpectralField field;
};

/// One snapshot file: a set of named fields on a common grid plus a time.
/// Layout is documented in docs/formats.md.
struct Snapshot {
  double time = 0.0;
  std::vector<NamedField> fields;

  const SpectralField& get(const std::string& name) const;
};

void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace hydro
