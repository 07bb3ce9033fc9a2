/*
 * Copyright 2026 The webspam authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header for the whole library.

#pragma once

#include "webspam/corpus.hpp"
#include "webspam/errors.hpp"
#include "webspam/experiment.hpp"
#include "webspam/features.hpp"
#include "webspam/fetch.hpp"
#include "webspam/html.hpp"
#include "webspam/lexicons.hpp"
#include "webspam/metrics.hpp"
#include "webspam/net.hpp"
#include "webspam/rng.hpp"
#include "webspam/text.hpp"
#include "webspam/url.hpp"
