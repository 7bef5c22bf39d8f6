// Copyright (c) the dctfilter project authors
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

#include "dctfilter/block_matrix.hpp"
#include "dctfilter/dct.hpp"
#include "dctfilter/filter.hpp"
#include "dctfilter/image.hpp"
#include "dctfilter/mask.hpp"
#include "dctfilter/operator_io.hpp"
#include "dctfilter/operators.hpp"
#include "dctfilter/spatial.hpp"
