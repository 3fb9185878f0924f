#pragma once

#include "asylum/audit.hpp"
#include "asylum/audit_report.hpp"
#include "asylum/choice.hpp"
#include "asylum/completion.hpp"
#include "asylum/examples.hpp"
#include "asylum/generator.hpp"
#include "asylum/io.hpp"
#include "asylum/manipulation.hpp"
#include "asylum/mechanism.hpp"
#include "asylum/model.hpp"
#include "asylum/rational.hpp"
#include "asylum/report.hpp"
#include "asylum/stability.hpp"
