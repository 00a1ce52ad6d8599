#pragma once

#include "cra/chain.hpp"
#include "cra/corpus.hpp"
#include "cra/cyclic_group.hpp"
#include "cra/decider.hpp"
#include "cra/dfa.hpp"
#include "cra/errors.hpp"
#include "cra/oracle.hpp"
#include "cra/rystsov.hpp"
#include "cra/standardizer.hpp"
#include "cra/state_set.hpp"
