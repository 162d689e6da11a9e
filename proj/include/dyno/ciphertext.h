// Copyright 2026 The DyNo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNO_CIPHERTEXT_H_
#define DYNO_CIPHERTEXT_H_

#include <cstdint>

#include "dyno/prf.h"
#include "dyno/ring.h"

namespace dyno {

// One client's masked vector. The label-free scheme uses the empty label.
struct Ciphertext {
  std::uint64_t slot = 0;
  Label label;
  RingVector c;
};

}  // namespace dyno

#endif  // DYNO_CIPHERTEXT_H_
