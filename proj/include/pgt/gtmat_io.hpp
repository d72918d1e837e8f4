#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pgt/core_model.hpp"

namespace pgt {

// GTMAT v1:
//   GTMAT v1 m=<m> n=<n> kind=<str> seed=<u64|none>
//   <m lines of n characters in {0,1}>
// A matrix without design metadata is written as kind=external seed=none and
// read back without metadata.

void write_gtmat(std::ostream& out, const ContactMatrix& mc);
ContactMatrix read_gtmat(std::istream& in, std::string_view source = "<stream>");

void save_matrix(const ContactMatrix& mc, const std::filesystem::path& path);
ContactMatrix load_matrix(const std::filesystem::path& path);

/// `supp=<comma-separated 1-based indices>`; `supp=` is the empty signal.
SparseSignal parse_signal(std::string_view text, std::size_t n);
std::string format_signal(const SparseSignal& x);

}  // namespace pgt
