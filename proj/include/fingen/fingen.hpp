#pragma once

#include "fingen/action.hpp"
#include "fingen/cli.hpp"
#include "fingen/coding.hpp"
#include "fingen/errors.hpp"
#include "fingen/fixtures.hpp"
#include "fingen/generating.hpp"
#include "fingen/group.hpp"
#include "fingen/io.hpp"
#include "fingen/partition.hpp"
#include "fingen/rearrange.hpp"
#include "fingen/synthesis.hpp"
#include "fingen/types.hpp"
