#pragma once

#include "qdephase/errors.hpp"
#include "qdephase/tensor_core.hpp"
#include "qdephase/noise_model.hpp"
#include "qdephase/parallel.hpp"
#include "qdephase/evolution.hpp"
#include "qdephase/measures.hpp"
#include "qdephase/diagnostics.hpp"
#include "qdephase/sweep.hpp"
