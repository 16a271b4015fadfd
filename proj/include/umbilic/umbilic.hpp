// Everything at once.
#pragma once

#include "umbilic/analysis.hpp"
#include "umbilic/deformation.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/jet.hpp"
#include "umbilic/local_algebra.hpp"
#include "umbilic/models.hpp"
#include "umbilic/normal_forms.hpp"
#include "umbilic/portrait.hpp"
#include "umbilic/scalar.hpp"
#include "umbilic/strata.hpp"
#include "umbilic/surface.hpp"
#include "umbilic/surface_spec.hpp"
#include "umbilic/versality.hpp"
