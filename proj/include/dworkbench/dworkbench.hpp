// Copyright 2026 The dworkbench Authors
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

#include "dworkbench/core.hpp"
#include "dworkbench/parallel.hpp"
#include "dworkbench/valuation_bounds.hpp"
#include "dworkbench/tropical_certifier.hpp"
#include "dworkbench/polygon.hpp"
#include "dworkbench/finite_field.hpp"
#include "dworkbench/cyclotomic.hpp"
#include "dworkbench/oracle.hpp"
#include "dworkbench/padic.hpp"
#include "dworkbench/charpoly.hpp"
#include "dworkbench/dwork.hpp"
