import { defineConfig } from "vitest/config";

// the service listens on 8765 by default; during development the UI is
// served by vite and proxies API calls through
export default defineConfig({
  server: {
    proxy: {
      "/pairs": "http://127.0.0.1:8765",
      "/agreement": "http://127.0.0.1:8765",
      "/health": "http://127.0.0.1:8765",
      "/schema": "http://127.0.0.1:8765",
    },
    fs: {
      // the annotation-record schema is shared with the backend package
      allow: ["..", "."],
    },
  },
  test: {
    environment: "jsdom",
  },
});
