// Copyright 2026 The FactEdit Authors.
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

// Umbrella header for the library (everything except the command line).

#pragma once

#include "factedit/config.hpp"
#include "factedit/corpus.hpp"
#include "factedit/editors.hpp"
#include "factedit/entity.hpp"
#include "factedit/error.hpp"
#include "factedit/exchange.hpp"
#include "factedit/lexicon.hpp"
#include "factedit/markup.hpp"
#include "factedit/metrics.hpp"
#include "factedit/parallel.hpp"
#include "factedit/report.hpp"
#include "factedit/rng.hpp"
#include "factedit/stem.hpp"
#include "factedit/synthesis.hpp"
#include "factedit/text.hpp"
