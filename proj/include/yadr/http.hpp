// Copyright 2026 The yadr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef YADR_HTTP_HPP_
#define YADR_HTTP_HPP_

#include <string>

#include <httplib.h>

#include "yadr/service.hpp"

namespace yadr {

/// Binds /restore, /feedback and /health. `service` must outlive `server`.
/// A non-empty `static_dir` is served at / (for a browser front end).
inline void MountRoutes(httplib::Server& server, const RestoreService& service,
                        const std::string& static_dir = {}) {
  const auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(DumpJson(r.body), "application/json; charset=utf-8");
  };
  server.set_payload_max_length(service.max_bytes() * 2 + 1024);
  server.Post("/restore", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.Restore(req.body));
  });
  server.Post("/feedback", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.Feedback(req.body));
  });
  server.Get("/health", [&service, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service.Health());
  });
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
}

}  // namespace yadr

#endif  // YADR_HTTP_HPP_
