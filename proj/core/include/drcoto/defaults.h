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

// Scenario constants. The first block is fixed by the experiment setup; the
// second is assumed (values the model description leaves open) and is also
// shipped in data/defaults.json.

namespace drcoto::defaults {

inline constexpr double kAreaX = 1000.0;  // m
inline constexpr double kAreaY = 1000.0;
inline constexpr int kNumGus = 15;
inline constexpr int kNumUavs = 3;
inline constexpr int kNumSlots = 15;
inline constexpr double kSlotLen = 2.0;  // s
inline constexpr double kMinSeparation = 20.0;
inline constexpr double kCruiseSpeed = 20.0;
inline constexpr double kUavAltitude = 200.0;
inline constexpr double kHapAltitude = 20000.0;
inline constexpr int kUavQuota = 3;
inline constexpr int kHapQuota = 7;
inline constexpr double kInterferenceDbm = -90.0;
inline constexpr int kHistoryLen = 200;
inline constexpr double kRadius = 0.3;
inline constexpr int kEvalDatasets = 5;

// Assumed.
inline constexpr double kGuCyclesPerBit = 500.0;
inline constexpr double kGuCpuHz = 1e9;
inline constexpr double kGuCapacitance = 1e-28;
inline constexpr double kGuTxPowerDbm = 20.0;
inline constexpr double kGuEnergyBudget = 10.0;  // J
inline constexpr double kUavCpuHz = 3e9;
inline constexpr double kUavCapacitance = 1e-28;
inline constexpr double kUavTxPowerDbm = 30.0;
inline constexpr double kUavEnergyBudget = 5e4;
inline constexpr double kHapCpuHz = 1e10;
inline constexpr double kHapCapacitance = 1e-28;
inline constexpr double kHapEnergyBudget = 1e4;
inline constexpr double kLosA = 9.61;
inline constexpr double kLosB = 0.16;  // 1/degree
inline constexpr double kBeta0Db = -40.0;
inline constexpr double kPathlossExp = 2.0;
inline constexpr double kNlosAtten = 0.2;
inline constexpr double kBandwidthGu = 1e6;
inline constexpr double kNoiseDbm = -100.0;
inline constexpr double kBandwidthUh = 1e6;
inline constexpr double kAntennaGainDb = 30.0;
inline constexpr double kTotalLossDb = -3.0;
inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kNoiseTemp = 290.0;
inline constexpr double kCarrierFreq = 2e9;
inline constexpr double kLightSpeed = 3e8;
inline constexpr double kBladePower = 79.86;
inline constexpr double kInducedPower = 88.63;
inline constexpr double kTipSpeed = 120.0;
inline constexpr double kDragRatio = 0.6;
inline constexpr double kAirDensity = 1.225;
inline constexpr double kRotorSolidity = 0.05;
inline constexpr double kRotorArea = 0.503;
inline constexpr double kMeanRotorVelocity = 4.03;

}  // namespace drcoto::defaults
