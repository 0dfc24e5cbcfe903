#pragma once

#include "msos/admissible.hpp"
#include "msos/category_laws.hpp"
#include "msos/component.hpp"
#include "msos/determinism.hpp"
#include "msos/enumerate.hpp"
#include "msos/error.hpp"
#include "msos/jsonio.hpp"
#include "msos/label.hpp"
#include "msos/langdef.hpp"
#include "msos/language.hpp"
#include "msos/program.hpp"
#include "msos/repository.hpp"
#include "msos/seedgrid.hpp"
#include "msos/sexpr.hpp"
#include "msos/term.hpp"
#include "msos/trace.hpp"
#include "msos/value.hpp"
