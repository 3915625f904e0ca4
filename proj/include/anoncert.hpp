/*
 * Copyright 2026 The anoncert Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header for the anoncert library.

#ifndef ANONCERT_ANONCERT_HPP_
#define ANONCERT_ANONCERT_HPP_

#include "anoncert/actors.hpp"
#include "anoncert/bigint.hpp"
#include "anoncert/bytes.hpp"
#include "anoncert/cert.hpp"
#include "anoncert/curve.hpp"
#include "anoncert/envelope.hpp"
#include "anoncert/error.hpp"
#include "anoncert/hash.hpp"
#include "anoncert/paper_vectors.hpp"
#include "anoncert/random.hpp"
#include "anoncert/scenario.hpp"
#include "anoncert/toy_oracle.hpp"

#endif  // ANONCERT_ANONCERT_HPP_
