#pragma once

#include "ambient.hpp"
#include "surface.hpp"
#include "calculus.hpp"
#include "identities.hpp"
#include "catalog.hpp"
