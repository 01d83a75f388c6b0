#pragma once

#include "acc/error.hpp"
#include "acc/rational.hpp"
#include "acc/ids.hpp"
#include "acc/core.hpp"
#include "acc/blowup.hpp"
#include "acc/linalg.hpp"
#include "acc/admissibility.hpp"
#include "acc/spectra.hpp"
#include "acc/pencil.hpp"
