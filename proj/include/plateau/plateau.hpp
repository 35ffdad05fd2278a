#pragma once

#include "anf.hpp"
#include "bits.hpp"
#include "boolfn.hpp"
#include "classify.hpp"
#include "construct.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "spectrum.hpp"
#include "support.hpp"
#include "transform.hpp"
