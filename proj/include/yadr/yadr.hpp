// Copyright 2026 The yadr Authors
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

// Everything except the HTTP binding (yadr/http.hpp).

#ifndef YADR_YADR_HPP_
#define YADR_YADR_HPP_

#include "yadr/corpus.hpp"
#include "yadr/decode.hpp"
#include "yadr/error.hpp"
#include "yadr/error_analysis.hpp"
#include "yadr/grapheme.hpp"
#include "yadr/inventory.hpp"
#include "yadr/lattice.hpp"
#include "yadr/lexicon.hpp"
#include "yadr/metrics.hpp"
#include "yadr/ngram.hpp"
#include "yadr/ocr.hpp"
#include "yadr/report.hpp"
#include "yadr/service.hpp"
#include "yadr/text.hpp"
#include "yadr/tokenize.hpp"
#include "yadr/unicode.hpp"
#include "yadr/utf8.hpp"

#endif  // YADR_YADR_HPP_
