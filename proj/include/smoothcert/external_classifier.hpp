//
// Copyright 2026 The SmoothCert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Adapter for classifiers running in a child process. The child reads
// requests on stdin and answers on stdout:
//
//   request:  "EVAL <n> <d>\n" then n lines of d space-separated floats
//   response: n lines, each "0" or "1"
//
// Floats use the shortest round-trip decimal form.

#ifndef SMOOTHCERT_EXTERNAL_CLASSIFIER_HPP_
#define SMOOTHCERT_EXTERNAL_CLASSIFIER_HPP_

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smoothcert/classifier.hpp"
#include "smoothcert/error.hpp"

namespace smoothcert {

struct ExternalClassifierOptions {
  std::vector<std::string> command;  // argv; command[0] is looked up in PATH
  std::size_t dimension = 0;         // 0 accepts any dimension
  std::size_t batch_size = 1024;
  int timeout_ms = 30000;  // per batch
};

namespace internal {

inline void AppendDouble(std::string& out, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, res.ptr);
}

inline void CloseFd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace internal

class ExternalClassifier final : public Classifier {
 public:
  explicit ExternalClassifier(ExternalClassifierOptions options) : options_(std::move(options)) {
    if (options_.command.empty()) throw ConfigError("external classifier command is empty");
    if (options_.batch_size == 0) throw ConfigError("external classifier batch size must be >= 1");
    if (options_.timeout_ms <= 0) throw ConfigError("external classifier timeout must be > 0");
  }

  ExternalClassifier(const ExternalClassifier&) = delete;
  ExternalClassifier& operator=(const ExternalClassifier&) = delete;

  ~ExternalClassifier() override { shutdown(); }

  const ExternalClassifierOptions& options() const { return options_; }
  std::size_t dimension() const override { return options_.dimension; }

  void classify(std::span<const double> points, std::size_t d,
                std::span<std::uint8_t> labels) override {
    if (broken_) throw TransportError("external classifier is unusable after an earlier failure");
    if (d == 0 || points.size() != labels.size() * d) {
      throw TransportError("request batch has inconsistent shape");
    }
    if (pid_ < 0) spawn();
    try {
      for (std::size_t first = 0; first < labels.size(); first += options_.batch_size) {
        const std::size_t rows = std::min(options_.batch_size, labels.size() - first);
        exchange(points.subspan(first * d, rows * d), d, labels.subspan(first, rows));
      }
    } catch (...) {
      broken_ = true;
      shutdown();
      throw;
    }
  }

  // Closes the child's stdin and reaps it.
  void shutdown() {
    internal::CloseFd(to_child_);
    internal::CloseFd(from_child_);
    if (pid_ > 0) {
      int status = 0;
      const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(500);
      while (::waitpid(pid_, &status, WNOHANG) == 0) {
        if (std::chrono::steady_clock::now() >= deadline) {
          ::kill(pid_, SIGKILL);
          ::waitpid(pid_, &status, 0);
          break;
        }
        ::usleep(1000);
      }
    }
    pid_ = -1;
  }

 private:
  void spawn() {
    ::signal(SIGPIPE, SIG_IGN);
    int in_pipe[2];
    int out_pipe[2];
    int err_pipe[2];
    if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw TransportError("pipe failed");
    if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
      ::close(in_pipe[0]);
      ::close(in_pipe[1]);
      throw TransportError("pipe failed");
    }
    if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
      for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
      throw TransportError("pipe failed");
    }
    std::vector<char*> argv;
    for (auto& arg : options_.command) argv.push_back(arg.data());
    argv.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) {
      for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) {
        ::close(fd);
      }
      throw TransportError("fork failed");
    }
    if (pid == 0) {
      ::dup2(in_pipe[0], STDIN_FILENO);
      ::dup2(out_pipe[1], STDOUT_FILENO);
      ::signal(SIGPIPE, SIG_DFL);
      ::execvp(argv[0], argv.data());
      const int err = errno;
      [[maybe_unused]] auto written = ::write(err_pipe[1], &err, sizeof(err));
      ::_exit(127);
    }
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[1]);
    int exec_errno = 0;
    ssize_t got;
    do {
      got = ::read(err_pipe[0], &exec_errno, sizeof(exec_errno));
    } while (got < 0 && errno == EINTR);
    ::close(err_pipe[0]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    if (got == static_cast<ssize_t>(sizeof(exec_errno))) {
      broken_ = true;
      shutdown();
      throw TransportError("cannot start '" + options_.command[0] +
                           "': " + std::strerror(exec_errno));
    }
    ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);
    ::fcntl(from_child_, F_SETFL, ::fcntl(from_child_, F_GETFL) | O_NONBLOCK);
  }

  // Writes one request and reads its response, interleaving both directions
  // so a child that answers row by row cannot deadlock on a full pipe.
  void exchange(std::span<const double> points, std::size_t d, std::span<std::uint8_t> labels) {
    const std::size_t rows = labels.size();
    std::string request = "EVAL " + std::to_string(rows) + " " + std::to_string(d) + "\n";
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (j > 0) request.push_back(' ');
        internal::AppendDouble(request, points[i * d + j]);
      }
      request.push_back('\n');
    }

    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(options_.timeout_ms);
    std::size_t written = 0;
    std::size_t answered = 0;
    std::string pending;
    char buf[65536];
    while (answered < rows) {
      const auto now = std::chrono::steady_clock::now();
      if (now >= deadline) {
        throw TransportError("external classifier timed out after " +
                             std::to_string(options_.timeout_ms) + " ms");
      }
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1;
      pollfd fds[2] = {{from_child_, POLLIN, 0}, {to_child_, POLLOUT, 0}};
      const nfds_t nfds = written < request.size() ? 2 : 1;
      const int ready = ::poll(fds, nfds, static_cast<int>(remaining));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("poll failed: ") + std::strerror(errno));
      }
      if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
        const ssize_t w = ::write(to_child_, request.data() + written, request.size() - written);
        if (w < 0 && errno != EAGAIN && errno != EINTR) {
          throw TransportError("external classifier closed its input");
        }
        if (w > 0) written += static_cast<std::size_t>(w);
      }
      if (fds[0].revents & (POLLIN | POLLERR | POLLHUP)) {
        const ssize_t r = ::read(from_child_, buf, sizeof(buf));
        if (r == 0) {
          throw TransportError("external classifier exited after " + std::to_string(answered) +
                               " of " + std::to_string(rows) + " labels");
        }
        if (r < 0) {
          if (errno == EAGAIN || errno == EINTR) continue;
          throw TransportError(std::string("read failed: ") + std::strerror(errno));
        }
        pending.append(buf, static_cast<std::size_t>(r));
        std::size_t start = 0;
        for (std::size_t nl; (nl = pending.find('\n', start)) != std::string::npos;
             start = nl + 1) {
          const std::string_view line(pending.data() + start, nl - start);
          if (answered == rows) {
            throw TransportError("external classifier sent more labels than requested");
          }
          if (line == "0" || line == "1") {
            labels[answered++] = line == "1" ? 1 : 0;
          } else {
            throw TransportError("malformed response line " + std::to_string(answered + 1) +
                                 ": '" + std::string(line.substr(0, 64)) + "'");
          }
        }
        pending.erase(0, start);
      }
    }
    if (!pending.empty()) {
      throw TransportError("external classifier sent trailing data after the last label");
    }
  }

  ExternalClassifierOptions options_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  bool broken_ = false;
};

}  // namespace smoothcert

#endif  // SMOOTHCERT_EXTERNAL_CLASSIFIER_HPP_
