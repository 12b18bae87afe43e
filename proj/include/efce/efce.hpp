// Copyright 2026 The EFCE Solver Authors.
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


// Convenience header pulling in the whole library.

#ifndef EFCE_EFCE_HPP
#define EFCE_EFCE_HPP

#include "efce/battleship.hpp"
#include "efce/chain.hpp"
#include "efce/chain_rm.hpp"
#include "efce/common.hpp"
#include "efce/decompose.hpp"
#include "efce/deviation.hpp"
#include "efce/fixtures.hpp"
#include "efce/game.hpp"
#include "efce/game_io.hpp"
#include "efce/plan.hpp"
#include "efce/regret.hpp"
#include "efce/relevance.hpp"
#include "efce/sequence_space.hpp"
#include "efce/solver.hpp"
#include "efce/triggers.hpp"

#endif  // EFCE_EFCE_HPP
