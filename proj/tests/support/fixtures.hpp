#pragma once

#include <sstream>
#include <string>

#include "sullivan/corpus.hpp"
#include "sullivan/parse.hpp"

namespace fixtures {

inline std::string corpus_path(const std::string& file) {
    return std::string(CORPUS_DIR) + "/" + file;
}

inline sullivan::SullivanModel corpus_model(const std::string& file) {
    return sullivan::parse_model(sullivan::slurp(corpus_path(file)));
}

// d : V -> Lambda^2 U an isomorphism on n odd degree-3 generators
inline sullivan::SullivanModel mn_family(int n) {
    std::ostringstream os;
    for (int i = 1; i <= n; ++i) os << "gen u" << i << " : 3\n";
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) os << "gen v" << i << j << " : 5\n";
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            os << "d v" << i << j << " = u" << i << "*u" << j << "\n";
    return sullivan::parse_model(os.str());
}

} // namespace fixtures
