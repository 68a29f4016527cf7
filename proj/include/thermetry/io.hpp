#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thermetry::io {

// shortest round-trip-safe decimal form (17 significant digits, C locale)
std::string fmt(double x);

// One "energy probability" pair per line; '#' starts a comment; blank lines
// are skipped.  Lines must not carry extra tokens.
struct StateFile {
    std::vector<double> energies;
    std::vector<double> probs;
};

StateFile parse_state_file(std::istream& in);
StateFile load_state_file(const std::string& path);

} // namespace thermetry::io
