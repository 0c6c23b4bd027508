// Copyright 2026 The Authors.
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

#pragma once

#include "submax/bench.hpp"
#include "submax/checks.hpp"
#include "submax/errors.hpp"
#include "submax/exact.hpp"
#include "submax/instance.hpp"
#include "submax/local_search.hpp"
#include "submax/oracle.hpp"
#include "submax/recursive.hpp"
#include "submax/rng.hpp"
#include "submax/subset.hpp"
