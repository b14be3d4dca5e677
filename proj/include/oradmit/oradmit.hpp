#pragma once

#include "oradmit/action_space.hpp"
#include "oradmit/config.hpp"
#include "oradmit/config_io.hpp"
#include "oradmit/errors.hpp"
#include "oradmit/exact.hpp"
#include "oradmit/experiment.hpp"
#include "oradmit/instances.hpp"
#include "oradmit/layout.hpp"
#include "oradmit/model.hpp"
#include "oradmit/poisson.hpp"
#include "oradmit/rlstd.hpp"
#include "oradmit/rng.hpp"
#include "oradmit/simulate.hpp"
#include "oradmit/version.hpp"
