#pragma once

#include <string>
#include <vector>

#include "rct/model_io.hpp"

namespace rct::test {

inline RelationalCausalTeam load_fixture(const std::string& name) {
    return load_model_file(std::string(RCT_FIXTURE_DIR) + "/" + name);
}

inline std::string fixture_path(const std::string& name) {
    return std::string(RCT_FIXTURE_DIR) + "/" + name;
}

// Assignment from value names, in variable order.
inline Assignment row(const Signature& sig, const std::vector<std::string>& values) {
    Assignment s;
    for (VarId v = 0; v < sig.size(); ++v) s.push_back(*sig.value_index(v, values.at(v)));
    return s;
}

inline Team team_of(const Signature& sig, const std::vector<std::vector<std::string>>& rows) {
    Team t;
    for (const auto& r : rows) t.insert(row(sig, r));
    return t;
}

// Two generic binary variables X1, X2: the main sweep signature.
inline Signature sig2x2() {
    return Signature({"X1", "X2"}, {{"0", "1"}, {"0", "1"}});
}

inline Signature sig3x2() {
    return Signature({"X1", "X2", "X3"}, {{"0", "1"}, {"0", "1"}, {"0", "1"}});
}

}  // namespace rct::test
