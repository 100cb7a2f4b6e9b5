// Copyright 2026 The cs-secrecy Authors.
//
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

#ifndef CSSECRECY_CSSECRECY_HPP_
#define CSSECRECY_CSSECRECY_HPP_

#include "cssecrecy/codec.hpp"
#include "cssecrecy/errors.hpp"
#include "cssecrecy/io.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/linalg.hpp"
#include "cssecrecy/recovery.hpp"
#include "cssecrecy/ripcheck.hpp"
#include "cssecrecy/rng.hpp"
#include "cssecrecy/secrecy.hpp"
#include "cssecrecy/vectors.hpp"

#endif  // CSSECRECY_CSSECRECY_HPP_
