#pragma once

#include "fano/kvdb.hpp"

#include <functional>
#include <memory>

namespace fano {

/// Immutable collection of databases addressed by dataid (e.g. "smoothfano4").
struct ServiceStore {
    std::map<std::string, Database> databases;

    /// Registers a database under the conventional dataid for its dimension.
    void add(Database db);
};

struct ServiceError : std::runtime_error {
    int http_status;
    ServiceError(int status, const std::string& what)
        : std::runtime_error(what), http_status(status) {}
};

/// Renders the XML body for a search over raw query parameters (as decoded
/// from the URL). Requires `agent` and `dataid`; understands `id`, `c2`..`c6`
/// and `printlevel` (1..3, default 1). Throws ServiceError(400) on malformed
/// input. The body layout (two-space indent, LF, element order) is frozen in
/// FORMAT.md.
std::string search_xml(const ServiceStore& store,
                       const std::map<std::string, std::string>& params,
                       std::string* agent_log = nullptr);

class HttpServer;

/// Read-only HTTP endpoint exposing GET /xml/search.xml over the store.
class Service {
  public:
    Service(ServiceStore store, int port);
    ~Service();

    /// Binds and serves until stop(); returns false if the port is taken.
    bool run();
    /// Binds to an ephemeral port and serves on a background thread (tests).
    int start_background();
    void stop();

    const ServiceStore& store() const { return store_; }

  private:
    ServiceStore store_;
    int port_;
    std::unique_ptr<HttpServer> server_;
};

}  // namespace fano
