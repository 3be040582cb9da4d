#include "veriloop/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>

namespace veriloop {

namespace {

double now_secs() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void set_nonblocking(int fd) { fcntl(fd, F_SETFL, fcntl(fd, F_GETFL, 0) | O_NONBLOCK); }

// A dying child must not take the parent down with a broken-pipe signal.
void ignore_sigpipe() {
  static const bool once = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

struct ChildResult {
  bool timed_out = false;
  bool exec_failed = false;
  int exit_status = -1;   // valid when exited normally
  int term_signal = -1;   // valid when killed (not by the deadline)
  std::string output;
};

ChildResult run_child(pid_t pid, int stdin_fd, int stdout_fd, const std::string& payload,
                      double deadline_secs) {
  ChildResult result;
  set_nonblocking(stdin_fd);
  set_nonblocking(stdout_fd);

  const double start = now_secs();
  size_t written = 0;
  bool stdin_open = true;
  bool stdout_open = true;
  if (payload.empty()) {
    close(stdin_fd);
    stdin_open = false;
  }

  char buf[4096];
  while (stdout_open || stdin_open) {
    const double remaining = deadline_secs - (now_secs() - start);
    if (remaining <= 0) {
      result.timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t n = 0;
    int stdout_slot = -1, stdin_slot = -1;
    if (stdout_open) {
      stdout_slot = static_cast<int>(n);
      fds[n++] = {stdout_fd, POLLIN, 0};
    }
    if (stdin_open) {
      stdin_slot = static_cast<int>(n);
      fds[n++] = {stdin_fd, POLLOUT, 0};
    }
    const int wait_ms = static_cast<int>(std::min(remaining, 0.1) * 1000) + 1;
    if (poll(fds, n, wait_ms) < 0 && errno != EINTR) break;

    if (stdout_slot >= 0 && (fds[stdout_slot].revents & (POLLIN | POLLHUP))) {
      ssize_t got = read(stdout_fd, buf, sizeof buf);
      if (got > 0) {
        result.output.append(buf, static_cast<size_t>(got));
      } else if (got == 0 || (got < 0 && errno != EAGAIN && errno != EINTR)) {
        close(stdout_fd);
        stdout_open = false;
      }
    }
    if (stdin_slot >= 0 && (fds[stdin_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t put = write(stdin_fd, payload.data() + written, payload.size() - written);
      if (put > 0) written += static_cast<size_t>(put);
      if ((put < 0 && errno != EAGAIN && errno != EINTR) || written == payload.size()) {
        close(stdin_fd);
        stdin_open = false;
      }
    }
  }
  if (stdin_open) close(stdin_fd);
  if (stdout_open) close(stdout_fd);

  if (result.timed_out) {
    kill(-pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    return result;
  }

  // Output is complete; give the child the rest of the deadline to exit.
  int status = 0;
  for (;;) {
    pid_t reaped = waitpid(pid, &status, WNOHANG);
    if (reaped == pid) break;
    if (reaped < 0 && errno != EINTR) break;
    if (now_secs() - start >= deadline_secs) {
      kill(-pid, SIGKILL);
      waitpid(pid, nullptr, 0);
      result.timed_out = true;
      return result;
    }
    usleep(2000);
  }
  if (WIFEXITED(status)) {
    result.exit_status = WEXITSTATUS(status);
    result.exec_failed = result.exit_status == 127;
  } else if (WIFSIGNALED(status)) {
    result.term_signal = WTERMSIG(status);
  }
  return result;
}

}  // namespace

Adapter make_subprocess_adapter(SubprocessSpec spec) {
  return [spec](const AdapterRequest& request) -> Result<AdapterResponse> {
    using R = Result<AdapterResponse>;
    ignore_sigpipe();
    if (spec.command.empty()) return R::fail("adapter command is empty");
    if (request.deadline_secs <= 0) {
      return R::ok({AdapterResponse::Status::Timeout, "no time left before the deadline"});
    }

    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0) return R::fail("pipe failed");
    if (pipe(out_pipe) != 0) {
      close(in_pipe[0]);
      close(in_pipe[1]);
      return R::fail("pipe failed");
    }

    std::vector<std::string> argv_store;
    argv_store.push_back(spec.command);
    argv_store.insert(argv_store.end(), spec.base_args.begin(), spec.base_args.end());
    argv_store.insert(argv_store.end(), request.args.begin(), request.args.end());

    pid_t pid = fork();
    if (pid < 0) {
      for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
      return R::fail("fork failed");
    }
    if (pid == 0) {
      setpgid(0, 0);  // own group, so a deadline kill reaps grandchildren too
      dup2(in_pipe[0], STDIN_FILENO);
      dup2(out_pipe[1], STDOUT_FILENO);
      dup2(out_pipe[1], STDERR_FILENO);
      for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
      if (!spec.working_dir.empty() && chdir(spec.working_dir.c_str()) != 0) _exit(127);
      std::vector<char*> argv;
      argv.reserve(argv_store.size() + 1);
      for (std::string& arg : argv_store) argv.push_back(arg.data());
      argv.push_back(nullptr);
      execvp(argv[0], argv.data());
      _exit(127);
    }

    close(in_pipe[0]);
    close(out_pipe[1]);
    ChildResult child =
        run_child(pid, in_pipe[1], out_pipe[0], request.payload, request.deadline_secs);

    if (child.timed_out) {
      return R::ok({AdapterResponse::Status::Timeout, "killed at the deadline"});
    }
    if (child.exec_failed) {
      return R::fail("cannot execute " + spec.command);
    }
    if (child.term_signal >= 0) {
      return R::fail("adapter killed by signal " + std::to_string(child.term_signal));
    }
    if (child.exit_status == 0) {
      return R::ok({AdapterResponse::Status::Pass, child.output});
    }
    if (child.exit_status == 1) {
      return R::ok({AdapterResponse::Status::Fail, child.output});
    }
    return R::fail("adapter exited with status " + std::to_string(child.exit_status));
  };
}

}  // namespace veriloop
