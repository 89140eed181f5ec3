#pragma once

#include "qldpc/errors.hpp"
#include "qldpc/gf2.hpp"
#include "qldpc/gf4.hpp"
#include "qldpc/matgroup.hpp"
#include "qldpc/stabilizer.hpp"
#include "qldpc/tanner.hpp"
#include "qldpc/coset_construction.hpp"
#include "qldpc/cayley_construction.hpp"
#include "qldpc/bp_decoder.hpp"
#include "qldpc/simulation.hpp"
#include "qldpc/config.hpp"
#include "qldpc/presets.hpp"
