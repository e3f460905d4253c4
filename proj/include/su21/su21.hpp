// Umbrella header: the whole library in dependency order.

#pragma once

#include "su21/errors.hpp"
#include "su21/complexmat.hpp"
#include "su21/form.hpp"
#include "su21/random.hpp"
#include "su21/classify.hpp"
#include "su21/parabolic.hpp"
#include "su21/words.hpp"
#include "su21/tracefield.hpp"
#include "su21/ledger.hpp"
#include "su21/normalize.hpp"
#include "su21/burnside.hpp"
#include "su21/irreducible.hpp"
#include "su21/detectors.hpp"
#include "su21/realize.hpp"
#include "su21/fuchsian.hpp"
#include "su21/corpus.hpp"
#include "su21/io.hpp"
#include "su21/cli_app.hpp"
