#pragma once

// Umbrella header: exact K-stability calculus for quasimaps on P^1.

#include "qmapk/binform.hpp"
#include "qmapk/divisor.hpp"
#include "qmapk/dvr.hpp"
#include "qmapk/elliptic.hpp"
#include "qmapk/ideal.hpp"
#include "qmapk/pencil.hpp"
#include "qmapk/quasimap.hpp"
#include "qmapk/rootfind.hpp"
