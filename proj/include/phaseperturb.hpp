// Copyright 2026 The phaseperturb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "phaseperturb/amplitude_augment.hpp"
#include "phaseperturb/batch.hpp"
#include "phaseperturb/config.hpp"
#include "phaseperturb/errors.hpp"
#include "phaseperturb/fft.hpp"
#include "phaseperturb/inspect.hpp"
#include "phaseperturb/matrix.hpp"
#include "phaseperturb/matrix_dump.hpp"
#include "phaseperturb/naive_dft.hpp"
#include "phaseperturb/phase_augment.hpp"
#include "phaseperturb/policy.hpp"
#include "phaseperturb/polar.hpp"
#include "phaseperturb/random.hpp"
#include "phaseperturb/stft.hpp"
#include "phaseperturb/verify.hpp"
#include "phaseperturb/wav.hpp"
