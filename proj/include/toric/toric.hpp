#pragma once

#include "toric/matrix.hpp"
#include "toric/normal_form.hpp"
#include "toric/point_configuration.hpp"
#include "toric/polytope.hpp"
#include "toric/embedding.hpp"
#include "toric/json_io.hpp"
#include "toric/cli.hpp"
