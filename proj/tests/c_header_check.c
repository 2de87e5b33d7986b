/* Copyright 2026 The geophase Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/* Compiled as C: the public header must stay valid C. */

#include "geophase/geophase.h"

int geophase_c_header_check(void) {
  gp_device* dev = NULL;
  gp_status s = gp_device_create(1.0, 50.0, 1.0, &dev);
  if (s != GP_OK) return -1;
  double gamma = 0.0;
  s = gp_predict_gamma(dev, 0.04, &gamma);
  gp_device_destroy(dev);
  return s == GP_OK && gamma > 1.57 && gamma < 1.571 ? 0 : -2;
}
