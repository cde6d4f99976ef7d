// Boots the real service on the bundled fixture network so the
// integration tests exercise the same HTTP boundary the browser uses.
import { spawn, type ChildProcess } from "node:child_process";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { BASE, PORT } from "./service.js";

let child: ChildProcess | undefined;

export async function setup(): Promise<void> {
  const repoRoot = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");
  const network = path.join(repoRoot, "fixtures", "golden-net");
  child = spawn("python3",
    ["-m", "wikilink.cli", "serve", "--network", network,
      "--host", "127.0.0.1", "--port", String(PORT)],
    { cwd: repoRoot, stdio: "ignore" });

  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const resp = await fetch(`${BASE}/api/health`);
      if (resp.ok) return;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) {
      child.kill("SIGTERM");
      throw new Error(`fixture service did not come up on ${BASE}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
}

export async function teardown(): Promise<void> {
  child?.kill("SIGTERM");
}
