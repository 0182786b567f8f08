#pragma once

#include <string>

namespace mcqgen {

/// Porter's suffix-stripping stemmer (the 1980 algorithm). Input is
/// expected lowercase; words shorter than 3 letters or containing
/// non-letters are returned unchanged.
std::string porter_stem(const std::string& word);

}  // namespace mcqgen
