// Global setup: launch the backing service in a temp corpus and hand its
// base URL to every suite. Suites share the server; they namespace their
// own projects/occasions/networks.

import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import type { GlobalSetupContext } from "vitest/node";

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
  }
}

const SERVE_CMD = process.env.SLAKIT_CMD ?? "slakit";

async function waitReady(baseUrl: string): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const response = await fetch(baseUrl + "/");
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error(`service at ${baseUrl} never became ready`);
}

export default async function setup({ provide }: GlobalSetupContext) {
  const workdir = mkdtempSync(join(tmpdir(), "slakit-workbench-"));
  const root = join(workdir, "corpus");
  const init = spawnSync(SERVE_CMD, ["init", "--root", root, "--with-starter-network"], {
    encoding: "utf-8",
  });
  if (init.status !== 0) {
    throw new Error(`slakit init failed: ${init.stderr || init.stdout}`);
  }
  const port = 21000 + Math.floor(Math.random() * 8000);
  const server: ChildProcess = spawn(
    SERVE_CMD,
    ["serve", "--root", root, "--port", String(port), "--session-timeout", "600"],
    { stdio: "ignore" },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  try {
    await waitReady(baseUrl);
  } catch (err) {
    server.kill("SIGKILL");
    throw err;
  }
  provide("baseUrl", baseUrl);

  return async () => {
    server.kill("SIGTERM");
    await new Promise((resolve) => setTimeout(resolve, 200));
    server.kill("SIGKILL");
    rmSync(workdir, { recursive: true, force: true });
  };
}
