#pragma once

// Text formats shared by the CLI and the library:
//
//   cache      G46CACHE v1, then `k;b:num/den,b:num/den,...` per weight
//   polynomial FABERPOLY v1 d=<degree>, then `r num/den` for r = 0..d
//   combo      key=value lines: D=, l=, a=comma-list, m=comma-list

#include "g46/expansion.hpp"
#include "g46/faber.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace g46 {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCacheHeader = "G46CACHE v1";
inline constexpr std::string_view kPolyHeader = "FABERPOLY v1";

std::string format_cache_line(const Expansion& e);
Expansion parse_cache_line(std::string_view line);

void write_cache(std::ostream& os, const std::vector<ExpansionEngine::Ptr>& expansions);
std::vector<Expansion> read_cache(std::istream& is);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void save_cache_file(const std::filesystem::path& path, const std::vector<ExpansionEngine::Ptr>& expansions);
/// Missing file reads as an empty cache.
std::vector<Expansion> load_cache_file(const std::filesystem::path& path);

void write_faberpoly(std::ostream& os, const FaberPolynomial& p);
/// Blank lines and lines starting with '#' are skipped.
FaberPolynomial read_faberpoly(std::istream& is);

ComboSpec parse_combo_spec(std::istream& is);

}  // namespace g46
