// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mvwave Project Contributors

#pragma once

#include "mvwave/core.hpp"
#include "mvwave/geometry.hpp"
#include "mvwave/image.hpp"
#include "mvwave/io.hpp"
#include "mvwave/kernels.hpp"
#include "mvwave/spectrum.hpp"
#include "mvwave/synth.hpp"
#include "mvwave/transform.hpp"
