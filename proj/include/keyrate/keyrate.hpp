// Copyright 2026 The keyrate Authors
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

#include "keyrate/channel.hpp"
#include "keyrate/config.hpp"
#include "keyrate/csv.hpp"
#include "keyrate/error.hpp"
#include "keyrate/mc_oracle.hpp"
#include "keyrate/optimizer.hpp"
#include "keyrate/protocols_pkd.hpp"
#include "keyrate/protocols_qkd.hpp"
#include "keyrate/rate_point.hpp"
#include "keyrate/sweep.hpp"
#include "keyrate/validate.hpp"
#include "keyrate/version.hpp"
