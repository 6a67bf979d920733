// Copyright 2026 The toricq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "toricq/entanglement.hpp"
#include "toricq/gf2.hpp"
#include "toricq/hamiltonian.hpp"
#include "toricq/io.hpp"
#include "toricq/lanczos.hpp"
#include "toricq/lattice.hpp"
#include "toricq/pauli.hpp"
#include "toricq/propagate.hpp"
#include "toricq/quench.hpp"
#include "toricq/spin_mask.hpp"
#include "toricq/stabilizer.hpp"
#include "toricq/state.hpp"
#include "toricq/verify.hpp"
#include "toricq/version.hpp"
