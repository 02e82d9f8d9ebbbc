#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace walkforge {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace walkforge
