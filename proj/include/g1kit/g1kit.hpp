// Copyright 2026 The g1kit Authors.
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

#include "g1kit/bernstein.hpp"
#include "g1kit/bezier_patch.hpp"
#include "g1kit/construct.hpp"
#include "g1kit/counterexample.hpp"
#include "g1kit/doo_sabin.hpp"
#include "g1kit/g1_verify.hpp"
#include "g1kit/mesh.hpp"
#include "g1kit/mesh_io.hpp"
#include "g1kit/patch_complex.hpp"
#include "g1kit/rational.hpp"
#include "g1kit/vec3.hpp"
