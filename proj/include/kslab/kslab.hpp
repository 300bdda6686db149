#pragma once

#include "kslab/catalog.hpp"
#include "kslab/clifford.hpp"
#include "kslab/fd.hpp"
#include "kslab/geometry.hpp"
#include "kslab/rng.hpp"
#include "kslab/sasaki.hpp"
#include "kslab/spinorfield.hpp"
#include "kslab/tensorfield.hpp"
#include "kslab/types.hpp"
#include "kslab/warped.hpp"
