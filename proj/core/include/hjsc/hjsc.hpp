#pragma once

#include "hjsc/curves.hpp"
#include "hjsc/diagnostics.hpp"
#include "hjsc/domain.hpp"
#include "hjsc/errors.hpp"
#include "hjsc/examples.hpp"
#include "hjsc/grid.hpp"
#include "hjsc/hamiltonian.hpp"
#include "hjsc/ode_reference.hpp"
#include "hjsc/running_cost.hpp"
#include "hjsc/solver.hpp"
#include "hjsc/value_field.hpp"
#include "hjsc/vec.hpp"
