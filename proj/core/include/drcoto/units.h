// Copyright 2026 The drcoto Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

// Conversions applied once when configuration is loaded. Everything inside
// the library is SI: bits, watts, hertz, meters, seconds, joules.
namespace drcoto::units {

inline constexpr double kBitsPerMbit = 1e6;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }
inline constexpr double mbit_to_bits(double mbit) { return mbit * kBitsPerMbit; }
inline constexpr double bits_to_mbit(double bits) { return bits / kBitsPerMbit; }

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double rad_to_deg(double r) { return r * 180.0 / kPi; }
inline constexpr double deg_to_rad(double d) { return d * kPi / 180.0; }

}  // namespace drcoto::units
