#pragma once

#define ELASTICA_VERSION "0.1.0"
