// Copyright 2026 The pft Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFT_PFT_HPP
#define PFT_PFT_HPP

#include "pft/config.hpp"
#include "pft/dressing.hpp"
#include "pft/error.hpp"
#include "pft/evolve.hpp"
#include "pft/fock.hpp"
#include "pft/interference.hpp"
#include "pft/model.hpp"
#include "pft/operator.hpp"
#include "pft/polynomial.hpp"
#include "pft/report_io.hpp"
#include "pft/runner.hpp"
#include "pft/transfer.hpp"
#include "pft/version.hpp"
#include "pft/wigner.hpp"

#endif  // PFT_PFT_HPP
