#pragma once

#include <string>

namespace pgn {

// 12 significant digits, the fixed float format of every CSV the tools emit
std::string format_double(double x);

}  // namespace pgn
