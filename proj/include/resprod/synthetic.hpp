#pragma once

#include <cstdint>
#include <filesystem>

#include "resprod/ingest.hpp"

namespace resprod::synthetic {

struct Spec {
  int areas = 9;
  int universities = 60;
  std::uint64_t seed = 1;
  int first_year = 2001;
  int last_year = 2003;
  int lag = 1;
  double publications_per_staff_year = 1.2;
};

/// The five input files of a synthetic national survey. Identical specs give
/// byte-identical files; randomness comes from raw mt19937_64 output rather
/// than the implementation-defined standard distributions.
ingest::InputTexts generate(const Spec& spec);

void write(const ingest::InputTexts& texts, const std::filesystem::path& dir);

}  // namespace resprod::synthetic
