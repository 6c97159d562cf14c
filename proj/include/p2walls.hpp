#pragma once

#include "p2walls/rational.hpp"
#include "p2walls/chern.hpp"
#include "p2walls/lattice.hpp"
#include "p2walls/stability.hpp"
#include "p2walls/quiver.hpp"
#include "p2walls/detbundle.hpp"
#include "p2walls/walls.hpp"
#include "p2walls/io.hpp"
