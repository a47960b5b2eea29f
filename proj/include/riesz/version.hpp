#pragma once

#define RIESZWEAK_VERSION "1.0.0"
