#include "thermetry/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace thermetry::io {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

StateFile parse_state_file(std::istream& in) {
    StateFile out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double energy, prob;
        if (!(ls >> energy)) {
            std::string stray;
            if (ls.clear(), ls >> stray)
                throw std::runtime_error("state file line " +
                                         std::to_string(lineno) +
                                         ": expected two numbers");
            continue; // blank or comment-only line
        }
        if (!(ls >> prob))
            throw std::runtime_error("state file line " +
                                     std::to_string(lineno) +
                                     ": missing probability");
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("state file line " +
                                     std::to_string(lineno) +
                                     ": trailing tokens");
        out.energies.push_back(energy);
        out.probs.push_back(prob);
    }
    if (out.energies.empty())
        throw std::runtime_error("state file: no levels found");
    return out;
}

StateFile load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    return parse_state_file(in);
}

} // namespace thermetry::io
