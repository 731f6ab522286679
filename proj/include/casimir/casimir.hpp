#pragma once

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/io.hpp"
#include "casimir/kramers_kronig.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/models.hpp"
#include "casimir/optical.hpp"
#include "casimir/quadrature.hpp"
