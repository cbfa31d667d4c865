#pragma once

#include "schober/braid.hpp"
#include "schober/dot.hpp"
#include "schober/error.hpp"
#include "schober/git_flop.hpp"
#include "schober/laurent.hpp"
#include "schober/local_system.hpp"
#include "schober/matrix.hpp"
#include "schober/perv_disk.hpp"
#include "schober/rational.hpp"
#include "schober/smith.hpp"
#include "schober/surface.hpp"
