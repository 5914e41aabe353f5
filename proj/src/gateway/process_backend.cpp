// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/process_backend.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "vforge/core/error.hpp"
#include "vforge/gateway/remote_chat_backend.hpp"

namespace vforge {
namespace {

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Fd& operator=(Fd&& other) noexcept {
    reset();
    fd_ = std::exchange(other.fd_, -1);
    return *this;
  }
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

struct ProcessOutput {
  int status = -1;
  std::string out;
  bool timed_out = false;
};

ProcessOutput run_shell(const std::string& command, const std::string& input, double timeout_s) {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0) throw TransientBackendError("pipe failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw TransientBackendError("pipe failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) throw TransientBackendError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  Fd to_child(in_pipe[1]);
  Fd from_child(out_pipe[0]);
  ::fcntl(to_child.get(), F_SETFL, O_NONBLOCK);

  ProcessOutput result;
  std::size_t written = 0;
  if (input.empty()) to_child.reset();
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::microseconds(static_cast<std::int64_t>(timeout_s * 1e6));
  char buffer[4096];
  while (from_child.get() >= 0) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      result.timed_out = true;
      ::kill(pid, SIGKILL);
      break;
    }
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {from_child.get(), POLLIN, 0};
    if (to_child.get() >= 0) fds[n++] = {to_child.get(), POLLOUT, 0};
    if (::poll(fds, n, static_cast<int>(remaining.count())) < 0 && errno != EINTR) break;
    if (n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t w = ::write(to_child.get(), input.data() + written, input.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      if (w < 0 && errno != EAGAIN) to_child.reset();
      if (written == input.size()) to_child.reset();
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t r = ::read(from_child.get(), buffer, sizeof(buffer));
      if (r > 0) {
        result.out.append(buffer, static_cast<std::size_t>(r));
      } else if (r == 0 || errno != EAGAIN) {
        from_child.reset();
      }
    }
  }
  to_child.reset();
  from_child.reset();
  int status = 0;
  ::waitpid(pid, &status, 0);
  result.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::int64_t count_words(std::string_view text) {
  std::int64_t n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace

ProcessBackend::ProcessBackend(BackendDescriptor descriptor) : Backend(std::move(descriptor)) {
  // A child that exits before reading its stdin must not kill us.
  ::signal(SIGPIPE, SIG_IGN);
}

GenerationResult ProcessBackend::send(const GenerationRequest& request, const std::string& body) {
  const ProcessOutput output = run_shell(descriptor().endpoint, body, descriptor().request_timeout_s);
  if (output.timed_out) throw TransientBackendError("local process timed out");
  if (output.status != 0) {
    throw TransientBackendError("local process exited with status " + std::to_string(output.status));
  }
  const auto first = output.out.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && output.out[first] == '{') {
    return parse_chat_response(descriptor(), output.out);
  }
  GenerationResult result;
  result.text = output.out;
  while (!result.text.empty() && (result.text.back() == '\n' || result.text.back() == '\r')) {
    result.text.pop_back();
  }
  // Plain-text tools report no usage; whitespace words stand in for tokens.
  result.usage.prompt_tokens = count_words(request.prompt);
  result.usage.completion_tokens = count_words(result.text);
  return result;
}

}  // namespace vforge
