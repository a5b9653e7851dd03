#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dmc {

using BigCount = boost::multiprecision::cpp_int;

inline BigCount pow2(int e) {
    BigCount one = 1;
    return one << e;
}

inline std::string to_decimal(const BigCount& v) { return v.str(); }

}  // namespace dmc
