import { defineConfig } from "vitest/config";

// UI and e2e suites opt into jsdom per file via @vitest-environment pragmas.
export default defineConfig({
  test: {
    environment: "node",
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
