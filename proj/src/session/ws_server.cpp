#include "werewolf/session/ws_server.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <deque>
#include <thread>

namespace werewolf::session {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class WsSession final : public Connection, public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, SessionHub& hub) : ws_(std::move(socket)), hub_(hub) {}

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.text(true);
    ws_.async_accept(beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

  void send(const std::string& frame) override {
    asio::post(ws_.get_executor(), [self = shared_from_this(), frame] {
      self->queue_.push_back(frame);
      if (self->queue_.size() == 1) self->write_next();
    });
  }

  std::optional<SessionHub::ConnectionId> id() const { return id_; }

  void close() {
    asio::post(ws_.get_executor(), [self = shared_from_this()] {
      beast::error_code ec;
      beast::get_lowest_layer(self->ws_).socket().close(ec);
    });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    id_ = hub_.connect(shared_from_this());
    read();
  }

  void read() { ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      if (id_) hub_.disconnect(*id_);
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    hub_.handle_frame(*id_, text);
    read();
  }

  void write_next() {
    ws_.async_write(asio::buffer(queue_.front()), beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      queue_.clear();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) write_next();
  }

  websocket::stream<beast::tcp_stream> ws_;
  SessionHub& hub_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  std::optional<SessionHub::ConnectionId> id_;
};

}  // namespace

struct WsServer::Impl {
  explicit Impl(SessionHub& h) : hub(h) {}

  void accept() {
    acceptor->async_accept(asio::make_strand(io), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      auto session = std::make_shared<WsSession>(std::move(socket), hub);
      sessions.push_back(session);
      session->start();
      accept();
    });
  }

  SessionHub& hub;
  asio::io_context io;
  std::optional<tcp::acceptor> acceptor;
  std::vector<std::weak_ptr<WsSession>> sessions;
  std::thread thread;
};

WsServer::WsServer(SessionHub& hub) : impl_(std::make_unique<Impl>(hub)) {}

WsServer::~WsServer() { stop(); }

int WsServer::start(const std::string& host, int port) {
  const tcp::endpoint endpoint(asio::ip::make_address(host), static_cast<unsigned short>(port));
  impl_->acceptor.emplace(impl_->io);
  impl_->acceptor->open(endpoint.protocol());
  impl_->acceptor->set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor->bind(endpoint);
  impl_->acceptor->listen();
  const int bound = impl_->acceptor->local_endpoint().port();
  impl_->accept();
  impl_->thread = std::thread([this] { impl_->io.run(); });
  return bound;
}

void WsServer::stop() {
  if (!impl_->thread.joinable()) return;
  asio::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor->close(ec);
    for (auto& weak : impl_->sessions) {
      if (auto s = weak.lock()) s->close();
    }
  });
  // Give sessions a moment to close cleanly before the loop is stopped.
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  impl_->io.stop();
  impl_->thread.join();
  for (auto& weak : impl_->sessions) {
    if (auto s = weak.lock(); s && s->id()) impl_->hub.disconnect(*s->id());
  }
  impl_->sessions.clear();
}

}  // namespace werewolf::session
